//! Right fractions `N D^{-1}` over the polynomial part of an algebra.
//!
//! Both algebra families are Ore domains, so every nested rational
//! expression collapses to a single right fraction. Common right multiples
//! are found by solving `a A = b B` for `A`, `B` of increasing degree.
//! This is only used where the shifted-power fragment is not enough.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Algebra, Element, Monomial, NcError, MAX_RANK};
use crate::scalars::{Scalar, ScalarError};

/// Degree cap for the common-multiple search.
pub const MAX_MULTIPLIER_DEGREE: u32 = 8;

/// Largest coefficient tolerated during elimination before the search gives
/// up: terms plus total degree, over numerator and denominator.
pub const MAX_COEFFICIENT_SIZE: u32 = 120;

/// Combined term count of the two sides above which no search is attempted.
pub const MAX_INPUT_TERMS: usize = 40;

fn coefficient_size(c: &Scalar) -> u32 {
    let degree = |p: &crate::scalars::Poly| p.terms_desc().map(|(e, _)| e.degree()).max().unwrap_or(0);
    (c.num().len() + c.den().len()) as u32 + degree(c.num()) + degree(c.den())
}

/// `num * den^{-1}` with `num`, `den` free of inverse factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: Element,
    den: Element,
}

impl Fraction {
    /// Clears the inverse factors of `e` by right multiplication.
    pub fn from_element(e: &Element) -> Result<Fraction, NcError> {
        let alg = e.algebra();
        let mut num = e.clone();
        let mut den = Element::one(alg);
        while num.has_inverse() {
            let mut poles: BTreeMap<(u8, Scalar), i32> = BTreeMap::new();
            for (m, _) in num.terms() {
                for x in m.factors().iter().filter(|x| x.pw.pow < 0) {
                    let n = poles.entry((x.gen, x.pw.shift.clone())).or_insert(0);
                    *n = (*n).max(-x.pw.pow);
                }
            }
            for ((g, c), n) in poles {
                let base = &Element::gen(alg, g) - &Element::scalar(alg, c);
                let p = base.pow(n as u32)?;
                num = num.mul(&p)?;
                den = den.mul(&p)?;
            }
        }
        Ok(Fraction { num, den })
    }

    pub fn numerator(&self) -> &Element {
        &self.num
    }

    pub fn denominator(&self) -> &Element {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Result<Fraction, NcError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero.into());
        }
        Ok(Fraction {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Fraction) -> Result<Fraction, NcError> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.den == o.den {
            return Ok(Fraction {
                num: &self.num + &o.num,
                den: self.den.clone(),
            });
        }
        let (a, b) = common_right_multiple(&self.den, &o.den)?;
        Ok(Fraction {
            num: &self.num.mul(&a)? + &o.num.mul(&b)?,
            den: self.den.mul(&a)?,
        })
    }

    pub fn sub(&self, o: &Fraction) -> Result<Fraction, NcError> {
        self.add(&o.neg())
    }

    /// `N1 D1^{-1} N2 D2^{-1} = N1 N' (D2 D')^{-1}` where `N2 D' = D1 N'`.
    pub fn mul(&self, o: &Fraction) -> Result<Fraction, NcError> {
        if self.is_zero() || o.is_zero() {
            let alg = self.num.algebra();
            return Ok(Fraction {
                num: Element::zero(alg),
                den: Element::one(alg),
            });
        }
        let (d_new, n_new) = common_right_multiple(&o.num, &self.den)?;
        Ok(Fraction {
            num: self.num.mul(&n_new)?,
            den: o.den.mul(&d_new)?,
        })
    }

    /// Applies `f` to the numerator and denominator separately; `f` must be
    /// a ring morphism into elements.
    pub fn map(&self, f: &dyn Fn(&Element) -> Result<Element, NcError>) -> Result<Fraction, NcError> {
        let n = Fraction::from_element(&f(&self.num)?)?;
        let d = Fraction::from_element(&f(&self.den)?)?;
        n.mul(&d.inverse()?)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_scalar().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) * inv({})", self.num, self.den)
        }
    }
}

/// Nonzero `(A, B)` with `a A = b B`.
pub fn common_right_multiple(a: &Element, b: &Element) -> Result<(Element, Element), NcError> {
    let alg = a.algebra();
    if a.is_zero() || b.is_zero() {
        return Err(ScalarError::DivisionByZero.into());
    }
    if let Some(c) = a.as_scalar() {
        return Ok((b.scale(&c.inv()?), Element::one(alg)));
    }
    if let Some(c) = b.as_scalar() {
        return Ok((Element::one(alg), a.scale(&c.inv()?)));
    }
    if a == b {
        return Ok((Element::one(alg), Element::one(alg)));
    }
    if a.commutator(b)?.is_zero() {
        return Ok((b.clone(), a.clone()));
    }
    if let Some(q) = left_quotient(a, b)? {
        return Ok((Element::one(alg), q));
    }
    if let Some(q) = left_quotient(b, a)? {
        return Ok((q, Element::one(alg)));
    }
    if a.len() + b.len() > MAX_INPUT_TERMS {
        return Err(NcError::SearchBudget);
    }
    let gens: Vec<u8> = alg.gens().filter(|&g| a.mentions(g) || b.mentions(g)).collect();
    for d in 1..=MAX_MULTIPLIER_DEGREE {
        let basis = monomials_up_to(alg, &gens, d)?;
        let mut cols = Vec::with_capacity(2 * basis.len());
        for m in &basis {
            cols.push(a.mul(m)?);
        }
        for m in &basis {
            cols.push(-&b.mul(m)?);
        }
        if let Some(v) = kernel_vector(&cols)? {
            let (va, vb) = v.split_at(basis.len());
            let combine = |cs: &[Scalar]| basis.iter().zip(cs).fold(Element::zero(alg), |acc, (m, c)| &acc + &m.scale(c));
            return Ok((combine(va), combine(vb)));
        }
    }
    Err(NcError::NoCommonMultiple(MAX_MULTIPLIER_DEGREE))
}

/// Exponent vector of a polynomial monomial.
fn exponents(m: &Monomial) -> Option<[i32; MAX_RANK as usize + 1]> {
    let mut e = [0; MAX_RANK as usize + 1];
    for x in m.factors() {
        if x.pw.pow < 0 {
            return None;
        }
        e[x.gen as usize] = x.pw.pow;
    }
    Some(e)
}

/// `q` with `a = b q`, if it exists.
///
/// Commutators lower the degree, so top-degree parts multiply as in the
/// commutative case and leading-term division decides divisibility.
pub fn left_quotient(a: &Element, b: &Element) -> Result<Option<Element>, NcError> {
    let alg = a.algebra();
    let Some((mb, cb)) = b.terms().next() else {
        return Err(ScalarError::DivisionByZero.into());
    };
    let Some(eb) = exponents(mb) else { return Ok(None) };
    let cb_inv = cb.inv()?;
    let mut r = a.clone();
    let mut q = Element::zero(alg);
    loop {
        let Some((mr, cr)) = r.terms().next().map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let Some(er) = exponents(&mr) else { return Ok(None) };
        if er.iter().zip(&eb).any(|(x, y)| x < y) {
            return Ok(None);
        }
        let mut t = Element::scalar(alg, &cr * &cb_inv);
        for g in alg.gens() {
            let n = er[g as usize] - eb[g as usize];
            if n > 0 {
                t = t.mul(&Element::gen(alg, g).pow(n as u32)?)?;
            }
        }
        r = &r - &b.mul(&t)?;
        q += &t;
    }
    Ok(Some(q))
}

/// Ordered monomials in `gens` of total degree at most `d`.
fn monomials_up_to(alg: Algebra, gens: &[u8], d: u32) -> Result<Vec<Element>, NcError> {
    let mut out = vec![Element::one(alg)];
    let mut frontier = vec![(Element::one(alg), 0usize, 0u32)];
    while let Some((m, start, deg)) = frontier.pop() {
        if deg == d {
            continue;
        }
        for (k, &g) in gens.iter().enumerate().skip(start) {
            let next = m.mul(&Element::gen(alg, g))?;
            out.push(next.clone());
            frontier.push((next, k, deg + 1));
        }
    }
    Ok(out)
}

/// A nonzero vector `v` with `sum v_i cols_i = 0`, if one exists.
fn kernel_vector(cols: &[Element]) -> Result<Option<Vec<Scalar>>, NcError> {
    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for c in cols {
        for (m, _) in c.terms() {
            let n = rows.len();
            rows.entry(m).or_insert(n);
        }
    }
    let ncols = cols.len();
    let mut mat = vec![vec![Scalar::zero(); ncols]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (m, v) in c.terms() {
            mat[rows[m]][j] = v.clone();
        }
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        // Prefer the simplest pivot to limit coefficient growth.
        let best = (r..mat.len())
            .filter(|&i| !mat[i][col].is_zero())
            .min_by_key(|&i| mat[i][col].num().len() + mat[i][col].den().len());
        let Some(p) = best else { continue };
        mat.swap(r, p);
        let inv = mat[r][col].inv()?;
        for v in mat[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                    if coefficient_size(v) > MAX_COEFFICIENT_SIZE {
                        return Err(NcError::SearchBudget);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    let Some(free) = (0..ncols).find(|c| !pivots.contains(c)) else {
        return Ok(None);
    };
    let mut v = vec![Scalar::zero(); ncols];
    v[free] = Scalar::one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = -&mat[i][free];
    }
    Ok(Some(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cleared_inverse_round_trips() {
        let alg = Algebra::al(2).unwrap();
        let e = &Element::gen(alg, 1) + &Element::inv_power(alg, 0, &Scalar::zero(), -1).unwrap().scale(&Scalar::alpha(0));
        let fr = Fraction::from_element(&e).unwrap();
        assert!(!fr.denominator().has_inverse());
        assert_eq!(fr.numerator(), &e.mul(fr.denominator()).unwrap());
    }

    #[test]
    fn weyl_pair_has_common_multiple() {
        let alg = Algebra::al(2).unwrap();
        let a = &Element::product(alg, &[Element::gen(alg, 0), Element::gen(alg, 1)]).unwrap() + &Element::scalar(alg, Scalar::alpha(0));
        let b = Element::gen(alg, 0);
        let (x, y) = common_right_multiple(&a, &b).unwrap();
        assert!(!x.is_zero());
        assert_eq!(a.mul(&x).unwrap(), b.mul(&y).unwrap());
    }

    #[test]
    fn left_division() {
        let alg = Algebra::pii();
        let g = |i| Element::gen(alg, i);
        let b = &g(1) + &Element::scalar(alg, Scalar::hbar());
        let q = &g(0).mul(&g(2)).unwrap() - &g(1);
        let a = b.mul(&q).unwrap();
        assert_eq!(left_quotient(&a, &b).unwrap(), Some(q));
        assert_eq!(left_quotient(&g(0), &g(1)).unwrap(), None);
        assert_eq!(left_quotient(&(&a + &g(2)), &b).unwrap(), None);
    }

    #[test]
    fn fraction_inverse_cancels() {
        let alg = Algebra::al(3).unwrap();
        let e = &Element::gen(alg, 1) + &Element::inv_power(alg, 0, &Scalar::zero(), -1).unwrap();
        let fr = Fraction::from_element(&e).unwrap();
        let one = fr.mul(&fr.inverse().unwrap()).unwrap();
        let diff = one.sub(&Fraction::from_element(&Element::one(alg)).unwrap()).unwrap();
        assert!(diff.is_zero());
    }
}
