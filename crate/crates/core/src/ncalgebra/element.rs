use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::monomial::{Factor, Monomial};
use super::univariate::{self, Pw, PwSum};
use super::{Algebra, Bracket, NcError};
use crate::scalars::{Scalar, ScalarError, SymMap};

/// A finite sum of normal-ordered monomials with scalar coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Element {
    alg: Algebra,
    terms: BTreeMap<Monomial, Scalar>,
}

type Word = Vec<Factor>;

fn factor(gen: u8, pw: Pw) -> Option<Factor> {
    (!pw.is_unit()).then_some(Factor { gen, pw })
}

fn plain(gen: u8, pow: i32) -> Option<Factor> {
    factor(gen, Pw::plain(pow))
}

impl Element {
    pub fn zero(alg: Algebra) -> Element {
        Element {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: Algebra) -> Element {
        Element::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: Algebra, c: Scalar) -> Element {
        let mut e = Element::zero(alg);
        e.add_term(Monomial::unit(), c);
        e
    }

    /// The generator `f_i`. Panics if `i` is out of range.
    pub fn gen(alg: Algebra, i: u8) -> Element {
        Element::try_gen(alg, i).expect("generator index in range")
    }

    pub fn try_gen(alg: Algebra, i: u8) -> Result<Element, NcError> {
        alg.check_gen(i)?;
        Ok(Element::from_factors(alg, vec![Factor { gen: i, pw: Pw::plain(1) }], Scalar::one()))
    }

    /// `(f_i - c)^n`.
    pub fn inv_power(alg: Algebra, i: u8, c: &Scalar, n: i32) -> Result<Element, NcError> {
        alg.check_gen(i)?;
        if n == 0 {
            return Err(NcError::ZeroPower);
        }
        Ok(Element::from_pw_sum(alg, i, Pw::shifted(c, n)))
    }

    fn from_pw_sum(alg: Algebra, gen: u8, sum: PwSum) -> Element {
        let mut e = Element::zero(alg);
        for (pw, c) in sum {
            e.add_term(Monomial(factor(gen, pw).into_iter().collect()), c);
        }
        e
    }

    fn from_factors(alg: Algebra, fs: Vec<Factor>, c: Scalar) -> Element {
        let mut e = Element::zero(alg);
        e.add_term(Monomial(fs), c);
        e
    }

    pub fn from_monomial(alg: Algebra, m: Monomial, c: Scalar) -> Element {
        Element::from_factors(alg, m.0, c)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value if the element has no generator content.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub fn has_inverse(&self) -> bool {
        self.terms.keys().any(Monomial::has_inverse)
    }

    /// Whether any monomial mentions generator `i`.
    pub fn mentions(&self, i: u8) -> bool {
        self.terms.keys().any(|m| m.power_of(i).is_some())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.alg);
        }
        Element {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn same_algebra(&self, o: &Element) -> Result<(), NcError> {
        if self.alg == o.alg {
            Ok(())
        } else {
            Err(NcError::AlgebraMismatch)
        }
    }

    /// The product in the algebra, normal ordered.
    pub fn mul(&self, o: &Element) -> Result<Element, NcError> {
        self.same_algebra(o)?;
        let mut pending = Vec::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut w = ma.0.clone();
                w.extend(mb.0.iter().cloned());
                pending.push((ca * cb, w));
            }
        }
        normal_order(self.alg, pending)
    }

    pub fn pow(&self, n: u32) -> Result<Element, NcError> {
        let mut acc = Element::one(self.alg);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Left-to-right product of a list; the empty product is one.
    pub fn product<'a>(alg: Algebra, xs: impl IntoIterator<Item = &'a Element>) -> Result<Element, NcError> {
        xs.into_iter().try_fold(Element::one(alg), |acc, x| acc.mul(x))
    }

    pub fn commutator(&self, o: &Element) -> Result<Element, NcError> {
        Ok(&self.mul(o)? - &o.mul(self)?)
    }

    /// True iff the element commutes with every generator.
    pub fn is_central(&self) -> Result<bool, NcError> {
        for i in self.alg.gens() {
            if !self.commutator(&Element::gen(self.alg, i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies a scalar map to coefficients and shifts alike.
    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Element, NcError> {
        let mut out = Element::zero(self.alg);
        for (m, c) in &self.terms {
            let fs = m
                .0
                .iter()
                .map(|x| {
                    Ok(Factor {
                        gen: x.gen,
                        pw: Pw {
                            shift: f(&x.pw.shift)?,
                            pow: x.pw.pow,
                        },
                    })
                })
                .collect::<Result<Vec<_>, ScalarError>>()?;
            out.add_term(Monomial(fs), f(c)?);
        }
        Ok(out)
    }

    pub fn subst_scalars(&self, map: &SymMap) -> Result<Element, NcError> {
        self.map_scalars(&|s| s.subst(map))
    }

    /// `lambda f_j + s` if the element has that shape with `lambda != 0`.
    pub fn as_affine(&self) -> Option<(u8, Scalar, Scalar)> {
        let mut gen = None;
        let mut lambda = Scalar::zero();
        let mut offset = Scalar::zero();
        for (m, c) in &self.terms {
            match m.0.as_slice() {
                [] => offset = c.clone(),
                [Factor { gen: g, pw }] if pw.pow == 1 && gen.is_none() => {
                    gen = Some(*g);
                    lambda = c.clone();
                }
                _ => return None,
            }
        }
        gen.map(|g| (g, lambda, offset))
    }

    /// Simultaneous substitution of generator images, then normal ordering.
    ///
    /// An inverted generator may only be mapped to a scalar or to an affine
    /// image `lambda f_j + s`, whose inverse powers are again shifted powers.
    pub fn substitute(&self, image: &dyn Fn(u8) -> Option<Element>) -> Result<Element, NcError> {
        let images: Vec<Option<Element>> = self.alg.gens().map(image).collect();
        for e in images.iter().flatten() {
            self.same_algebra(e)?;
        }
        let mut out = Element::zero(self.alg);
        for (m, c) in &self.terms {
            let mut acc = Element::scalar(self.alg, c.clone());
            for x in &m.0 {
                let piece = match &images[x.gen as usize] {
                    None => Element::from_factors(self.alg, vec![x.clone()], Scalar::one()),
                    Some(img) if x.pw.pow > 0 => img.pow(x.pw.pow as u32)?,
                    Some(img) => shifted_inverse_of(img, &x.pw).ok_or(NcError::InverseObstruction(x.gen))??,
                };
                acc = acc.mul(&piece)?;
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Replaces `f_i` by `r` and normal orders.
    pub fn subst_generator(&self, i: u8, r: &Element) -> Result<Element, NcError> {
        self.alg.check_gen(i)?;
        self.substitute(&|g| (g == i).then(|| r.clone()))
    }

    /// The single generator the element depends on, if exactly one.
    pub fn single_generator(&self) -> Option<u8> {
        let mut gen = None;
        for m in self.terms.keys() {
            for x in &m.0 {
                match gen {
                    None => gen = Some(x.gen),
                    Some(g) if g != x.gen => return None,
                    _ => {}
                }
            }
        }
        gen
    }

    /// Two-sided inverse inside the shifted-power fragment.
    ///
    /// Succeeds for nonzero scalars, single monomials whose reversed
    /// factor inverses normal order, and one-generator rational functions
    /// whose numerator has degree at most one.
    pub fn inverse(&self) -> Result<Element, NcError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero.into());
        }
        if let Some(c) = self.as_scalar() {
            return Ok(Element::scalar(self.alg, c.inv()?));
        }
        if self.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            let mut acc = Element::scalar(self.alg, c.inv()?);
            for x in m.0.iter().rev() {
                let inv = Element::from_pw_sum(self.alg, x.gen, Pw::shifted(&x.pw.shift, -x.pw.pow));
                acc = acc.mul(&inv)?;
            }
            return Ok(acc);
        }
        let gen = self.single_generator().ok_or(NcError::NotInvertible)?;
        // Write self = N(f) / D(f) with D the product of its poles.
        let mut den = Element::one(self.alg);
        let mut poles: BTreeMap<Scalar, i32> = BTreeMap::new();
        for m in self.terms.keys() {
            if let Some(pw) = m.power_of(gen).filter(|p| p.pow < 0) {
                let e = poles.entry(pw.shift.clone()).or_insert(0);
                *e = (*e).max(-pw.pow);
            }
        }
        for (c, n) in &poles {
            den = den.mul(&Element::inv_power(self.alg, gen, c, *n)?)?;
        }
        let num = self.mul(&den)?;
        let (lead, rest) = linear_coeffs(&num, gen).ok_or(NcError::NotInvertible)?;
        let root = (-&rest).checked_div(&lead)?;
        let pole = Element::inv_power(self.alg, gen, &root, -1)?.scale(&lead.inv()?);
        den.mul(&pole)
    }
}

/// True iff `[r, f_j] = [f_i, f_j]` for every `j != i`, so replacing
/// `f_i` by `r` respects the defining relations.
pub fn substitution_is_consistent(alg: Algebra, i: u8, r: &Element) -> Result<bool, NcError> {
    alg.check_gen(i)?;
    for j in alg.gens().filter(|&j| j != i) {
        let fj = Element::gen(alg, j);
        if r.commutator(&fj)? != alg.defining_commutator(i, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(img - c)^pow` for `pow < 0` when `img` is scalar or affine.
fn shifted_inverse_of(img: &Element, pw: &Pw) -> Option<Result<Element, NcError>> {
    let alg = img.algebra();
    if let Some(s) = img.as_scalar() {
        return Some(
            (&s - &pw.shift)
                .powi(pw.pow)
                .map(|v| Element::scalar(alg, v))
                .map_err(NcError::from),
        );
    }
    let (g, lambda, offset) = img.as_affine()?;
    let run = || -> Result<Element, NcError> {
        let shift = (&pw.shift - &offset).checked_div(&lambda)?;
        let scale = lambda.powi(pw.pow)?;
        Ok(Element::inv_power(alg, g, &shift, pw.pow)?.scale(&scale))
    };
    Some(run())
}

/// Coefficients `(a, b)` if the element is `a f + b` with `a != 0`, or
/// `(0, b)` is rejected.
fn linear_coeffs(e: &Element, gen: u8) -> Option<(Scalar, Scalar)> {
    let mut lead = Scalar::zero();
    let mut rest = Scalar::zero();
    for (m, c) in e.terms() {
        match m.0.as_slice() {
            [] => rest = c.clone(),
            [x] if x.gen == gen && x.pw == Pw::plain(1) => lead = c.clone(),
            _ => return None,
        }
    }
    (!lead.is_zero()).then_some((lead, rest))
}

/// Canonical combination of distinct-shift inverse powers of one generator.
pub fn partial_fraction_merge(alg: Algebra, gen: u8, factors: &[(Scalar, i32)]) -> Result<Element, NcError> {
    alg.check_gen(gen)?;
    for (k, (c, _)) in factors.iter().enumerate() {
        if factors[..k].iter().any(|(d, _)| d == c) {
            return Err(NcError::ShiftCollision);
        }
    }
    let mut acc = Element::one(alg);
    for (c, n) in factors {
        acc = acc.mul(&Element::inv_power(alg, gen, c, *n)?)?;
    }
    Ok(acc)
}

/// A piece of a rewrite: coefficient and replacement factors.
type Piece = (Scalar, Vec<Factor>);

fn sum_pieces(gen: u8, sum: PwSum, coef: &Scalar, before: &[Factor], after: &[Factor]) -> Vec<Piece> {
    sum.into_iter()
        .map(|(pw, c)| {
            let mut w = before.to_vec();
            w.extend(factor(gen, pw));
            w.extend_from_slice(after);
            (&c * coef, w)
        })
        .collect()
}

/// Rewrites an adjacent out-of-order pair `left * right` (`left.gen > right.gen`).
fn swap_pair(alg: Algebra, left: &Factor, right: &Factor) -> Result<Vec<Piece>, NcError> {
    let (j, i) = (left.gen, right.gen);
    let bracket = alg.bracket(j, i);
    if bracket == Bracket::Commute {
        return Ok(vec![(Scalar::one(), vec![right.clone(), left.clone()])]);
    }
    let h = Scalar::hbar();
    let one = Scalar::one();
    let (p, q) = (&left.pw, &right.pw);
    if p.pow > 0 {
        // f_j^n Q = f_j^{n-1} (f_j Q)
        let rest: Vec<Factor> = plain(j, p.pow - 1).into_iter().collect();
        let dq = univariate::derivative(q);
        let mut out = vec![(one.clone(), {
            let mut w = rest.clone();
            w.push(right.clone());
            w.push(Factor { gen: j, pw: Pw::plain(1) });
            w
        })];
        match bracket {
            Bracket::Central(g) => out.extend(sum_pieces(i, dq, &g, &rest, &[])),
            Bracket::Quadratic => {
                let f2 = [Factor { gen: 2, pw: Pw::plain(1) }];
                let ddq = univariate::derivative_sum(&dq);
                out.extend(sum_pieces(i, dq, &(Scalar::int(2) * h.clone()), &rest, &f2));
                out.extend(sum_pieces(i, ddq, &-(&h * &h), &rest, &[]));
            }
            Bracket::Commute => unreachable!(),
        }
        return Ok(out);
    }
    if q.pow > 0 {
        // P f_i^m = (P f_i) f_i^{m-1}
        let rest: Vec<Factor> = plain(i, q.pow - 1).into_iter().collect();
        let dp = univariate::derivative(p);
        let mut lead = vec![Factor { gen: i, pw: Pw::plain(1) }, left.clone()];
        lead.extend(rest.iter().cloned());
        let mut out = vec![(one, lead)];
        match bracket {
            Bracket::Central(g) => out.extend(sum_pieces(j, dp, &g, &[], &rest)),
            Bracket::Quadratic => {
                let mut f2_rest = vec![Factor { gen: 2, pw: Pw::plain(1) }];
                f2_rest.extend(rest.iter().cloned());
                let ddp = univariate::derivative_sum(&dp);
                out.extend(sum_pieces(j, dp, &(Scalar::int(2) * h.clone()), &[], &f2_rest));
                out.extend(sum_pieces(j, ddp, &(&h * &h), &[], &rest));
            }
            Bracket::Commute => unreachable!(),
        }
        return Ok(out);
    }
    Err(NcError::UnorderableInverses(j, i))
}

fn normal_order(alg: Algebra, mut pending: Vec<(Scalar, Word)>) -> Result<Element, NcError> {
    let mut out = Element::zero(alg);
    while let Some((c, w)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let merge_at = w.windows(2).position(|p| p[0].gen == p[1].gen);
        let pieces = if let Some(k) = merge_at {
            let g = w[k].gen;
            (k, sum_pieces(g, univariate::mul(&w[k].pw, &w[k + 1].pw), &Scalar::one(), &[], &[]))
        } else if let Some(k) = w.windows(2).position(|p| p[0].gen > p[1].gen) {
            (k, swap_pair(alg, &w[k], &w[k + 1])?)
        } else {
            out.add_term(Monomial(w), c);
            continue;
        };
        let (k, pieces) = pieces;
        for (s, mid) in pieces {
            let mut nw = Vec::with_capacity(w.len() + mid.len());
            nw.extend_from_slice(&w[..k]);
            nw.extend(mid);
            nw.extend_from_slice(&w[k + 2..]);
            pending.push((&c * &s, nw));
        }
    }
    Ok(out)
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, o: &Element) {
        assert_eq!(self.alg, o.alg, "adding elements of different algebras");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, o: &Element) {
        assert_eq!(self.alg, o.alg, "subtracting elements of different algebras");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, o: Element) -> Element {
        &self + &o
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        &self - &o
    }
}

fn needs_parens(c: &Scalar) -> bool {
    c.den().is_one() && c.num().len() > 1
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if let Some(c) = self.as_scalar() {
            return write!(f, "{c}");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coef_parens = needs_parens(&mag);
            if m.is_unit() {
                if coef_parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if coef_parens {
                write!(f, "({mag})*{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.alg, self)
    }
}
