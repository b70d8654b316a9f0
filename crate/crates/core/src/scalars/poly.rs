//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order, so the last key is always the leading monomial.
//! Zero coefficients are never stored.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sym::{Sym, NSYM};

pub type Rat = BigRational;

/// Exponent vector indexed by [`Sym::index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exps(pub [u16; NSYM]);

impl Exps {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn of(s: Sym, n: u16) -> Exps {
        let mut e = Exps::default();
        e.0[s.index()] = n;
        e
    }

    pub fn get(&self, s: Sym) -> u16 {
        self.0[s.index()]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, o: &Exps) -> Exps {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    fn checked_sub(&self, o: &Exps) -> Option<Exps> {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(r)
    }

    pub fn meet(&self, o: &Exps) -> Exps {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    /// Symbols with a nonzero exponent, in canonical order.
    pub fn symbols(&self) -> impl Iterator<Item = (Sym, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Sym::from_index(i), e))
    }

    fn mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, e) in self.symbols() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{s}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::term(c, Exps::default())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn var(s: Sym) -> Poly {
        Poly::term(Rat::one(), Exps::of(s, 1))
    }

    pub fn term(c: Rat, e: Exps) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial has no symbols.
    pub fn constant_value(&self) -> Option<&Rat> {
        match self.terms.len() {
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.is_unit())
                .map(|(_, c)| c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.constant_value().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// `self -= c * x^e * d`
    fn sub_scaled(&mut self, c: &Rat, e: &Exps, d: &Poly) {
        for (de, dc) in &d.terms {
            self.add_term(de.add(e), -(c * dc));
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bit set of symbols present.
    pub fn var_mask(&self) -> u32 {
        self.terms.keys().fold(0, |m, e| m | e.mask())
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.var_mask() & (1 << s.index()) != 0
    }

    pub fn degree_in(&self, s: Sym) -> u16 {
        self.terms.keys().map(|e| e.get(s)).max().unwrap_or(0)
    }

    /// Coefficients of the powers of `s`, each free of `s`.
    pub fn coeffs_in(&self, s: Sym) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        let i = s.index();
        for (e, c) in &self.terms {
            let k = e.0[i];
            let mut rest = *e;
            rest.0[i] = 0;
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of `s^k` as a polynomial free of `s`.
    pub fn coeff_in(&self, s: Sym, k: u16) -> Poly {
        let i = s.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.0[i] == k {
                let mut rest = *e;
                rest.0[i] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(e) => *e,
            None => return Exps::default(),
        };
        it.fold(first, |m, e| m.meet(e))
    }

    pub fn mul_exps(&self, e: &Exps) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.add(e), c.clone())).collect(),
        }
    }

    pub fn div_exps(&self, e: &Exps) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.checked_sub(e)?, c.clone());
        }
        Some(Poly { terms })
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if d.terms.len() == 1 {
            let (e, c) = d.leading().unwrap();
            return Some(self.div_exps(e)?.scale(&c.recip()));
        }
        let (dle, dlc) = d.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            let e = re.checked_sub(&dle)?;
            let c = rc / &dlc;
            r.sub_scaled(&c, &e, d);
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn partial(&self, s: Sym) -> Poly {
        let i = s.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k > 0 {
                let mut ne = *e;
                ne.0[i] = k - 1;
                out.add_term(ne, c * Rat::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// Substitute polynomial images for symbols; unmapped symbols stay.
    pub fn subst_poly(&self, map: &dyn Fn(Sym) -> Option<Poly>) -> Poly {
        let mut images: BTreeMap<usize, Poly> = BTreeMap::new();
        for i in 0..NSYM {
            if self.var_mask() & (1 << i) != 0 {
                if let Some(p) = map(Sym::from_index(i)) {
                    images.insert(i, p);
                }
            }
        }
        if images.is_empty() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut kept = *e;
            let mut t = Poly::one();
            for (i, img) in &images {
                let k = e.0[*i];
                if k > 0 {
                    kept.0[*i] = 0;
                    t = &t * &img.pow(k as u32);
                }
            }
            for (te, tc) in t.terms {
                out.add_term(te.add(&kept), tc * c);
            }
        }
        out
    }

    /// Sign of the leading coefficient.
    pub fn leading_is_negative(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

pub(crate) fn fmt_rat(c: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Writes one term with its magnitude only; the caller handles the sign.
fn fmt_abs_term(e: &Exps, c: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let a = c.abs();
    if e.is_unit() {
        return fmt_rat(&a, f);
    }
    if !a.is_one() {
        fmt_rat(&a, f)?;
        f.write_str("*")?;
    }
    write!(f, "{e:?}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms_desc().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            fmt_abs_term(e, c, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(s: Sym) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn graded_order_puts_higher_degree_last() {
        let p = &(&v(Sym::T) * &v(Sym::T)) + &v(Sym::Hbar);
        assert_eq!(p.leading().unwrap().0.degree(), 2);
        assert_eq!(p.to_string(), "t^2 + hbar");
    }

    #[test]
    fn earlier_symbol_leads_within_degree() {
        let p = &v(Sym::Alpha(0)) + &v(Sym::Hbar);
        assert_eq!(p.to_string(), "hbar + a0");
    }

    #[test]
    fn exact_division() {
        let a = &v(Sym::X) + &Poly::one();
        let b = &v(Sym::Y) - &v(Sym::T);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&v(Sym::X) + &Poly::int(2))).is_none());
    }

    #[test]
    fn substitution_and_derivative() {
        let p = &v(Sym::T) * &v(Sym::T);
        assert_eq!(p.partial(Sym::T), Poly::int(2).mul_exps(&Exps::of(Sym::T, 1)));
        let q = p.subst_poly(&|s| (s == Sym::T).then(|| &v(Sym::X) + &Poly::one()));
        assert_eq!(q.to_string(), "x^2 + 2*x + 1");
    }

    #[test]
    fn negative_terms_print_with_minus() {
        let p = &(&v(Sym::E) * &v(Sym::E)).scale(&Rat::new(BigInt::from(-1), BigInt::from(2)))
            + &Poly::int(3);
        assert_eq!(p.to_string(), "-1/2*E^2 + 3");
    }
}
