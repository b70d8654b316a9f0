//! Time flows as derivations of the algebra, their structural checks, and
//! the single-variable reductions.

mod checks;
mod reductions;

use alloc::vec::Vec;

use crate::ncalgebra::{Algebra, Element, Factor, Family, Monomial, NcError};
use crate::scalars::Scalar;

pub use checks::{check_conserved, check_flow_preserves_relations};
pub use reductions::{
    normalize_k, pv_w_gauge, verify_scalar_p34, verify_scalar_pii, verify_scalar_piv, verify_scalar_pv_w, PvGauge,
};

/// A derivation given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSpec {
    alg: Algebra,
    rhs: Vec<Element>,
}

/// `alpha_0 + ... + alpha_l`.
pub fn k_sum(alg: Algebra) -> Scalar {
    (0..alg.nparams()).fold(Scalar::zero(), |acc, i| &acc + &Scalar::alpha(i))
}

impl FlowSpec {
    /// The standard flow of the algebra.
    pub fn standard(alg: Algebra) -> FlowSpec {
        let rhs = match alg.family() {
            Family::Pii => pii_rhs(alg),
            Family::Al if alg.rank() % 2 == 0 => even_rhs(alg),
            Family::Al => odd_rhs(alg),
        };
        FlowSpec { alg, rhs }
    }

    /// A flow with explicit generator values, e.g. a deliberately mutated one.
    pub fn custom(alg: Algebra, rhs: Vec<Element>) -> FlowSpec {
        assert_eq!(rhs.len(), alg.ngens() as usize, "one value per generator");
        FlowSpec { alg, rhs }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    /// The value of the flow on `f_i`.
    pub fn rhs(&self, i: u8) -> &Element {
        &self.rhs[i as usize]
    }

    pub fn k(&self) -> Scalar {
        k_sum(self.alg)
    }

    /// Extends the flow to any element by linearity and Leibniz, with
    /// `d(u^{-1}) = -u^{-1} d(u) u^{-1}` on inverted factors and the time
    /// derivative on coefficients and shifts.
    pub fn d_t(&self, a: &Element) -> Result<Element, NcError> {
        let alg = self.alg;
        let mut out = Element::zero(alg);
        for (m, c) in a.terms() {
            let dc = c.d_t();
            if !dc.is_zero() {
                out += &Element::from_monomial(alg, m.clone(), dc);
            }
            let fs = m.factors();
            for k in 0..fs.len() {
                let left = Element::from_monomial(alg, Monomial::from_factors(fs[..k].to_vec()), c.clone());
                let right = Element::from_monomial(alg, Monomial::from_factors(fs[k + 1..].to_vec()), Scalar::one());
                let d = self.d_factor(&fs[k])?;
                out += &left.mul(&d)?.mul(&right)?;
            }
        }
        Ok(out)
    }

    fn d_factor(&self, x: &Factor) -> Result<Element, NcError> {
        let alg = self.alg;
        let n = x.pw.pow;
        let df = self.rhs(x.gen);
        if n > 0 {
            let f = Element::gen(alg, x.gen);
            let mut out = Element::zero(alg);
            for a in 0..n {
                out += &f.pow(a as u32)?.mul(df)?.mul(&f.pow((n - 1 - a) as u32)?)?;
            }
            return Ok(out);
        }
        let du = df - &Element::scalar(alg, x.pw.shift.d_t());
        let u_inv = Element::inv_power(alg, x.gen, &x.pw.shift, -1)?;
        let d_inv = -&u_inv.mul(&du)?.mul(&u_inv)?;
        let m = (-n) as u32;
        let mut out = Element::zero(alg);
        for a in 0..m {
            out += &u_inv.pow(a)?.mul(&d_inv)?.mul(&u_inv.pow(m - 1 - a)?)?;
        }
        Ok(out)
    }
}

fn f(alg: Algebra, i: usize) -> Element {
    Element::gen(alg, (i % alg.ngens() as usize) as u8)
}

fn alpha(alg: Algebra, i: usize) -> Scalar {
    Scalar::alpha((i % alg.nparams() as usize) as u8)
}

fn pii_rhs(alg: Algebra) -> Vec<Element> {
    let g = |i| Element::gen(alg, i);
    let sym = |a: &Element, b: &Element| -> Element { &a.mul(b).expect("same algebra") + &b.mul(a).expect("same algebra") };
    let a0 = Element::scalar(alg, Scalar::alpha(0));
    let a1 = Element::scalar(alg, Scalar::alpha(1));
    alloc::vec![
        &sym(&g(0), &g(2)) + &a0,
        &a1 - &sym(&g(1), &g(2)),
        &g(1) - &g(0),
    ]
}

fn even_rhs(alg: Algebra) -> Vec<Element> {
    let n = alg.rank() as usize / 2;
    (0..alg.ngens() as usize)
        .map(|i| {
            let odd = (1..=n).fold(Element::zero(alg), |acc, r| &acc + &f(alg, i + 2 * r - 1));
            let even = (1..=n).fold(Element::zero(alg), |acc, r| &acc + &f(alg, i + 2 * r));
            let fi = f(alg, i);
            let lhs = fi.mul(&odd).expect("same algebra");
            let rhs = even.mul(&fi).expect("same algebra");
            &(&lhs - &rhs) + &Element::scalar(alg, alpha(alg, i))
        })
        .collect()
}

fn odd_rhs(alg: Algebra) -> Vec<Element> {
    let n = alg.rank() as usize / 2;
    let half_k = k_sum(alg) * Scalar::ratio(1, 2);
    (0..alg.ngens() as usize)
        .map(|i| {
            let mut left = Element::zero(alg);
            let mut right = Element::zero(alg);
            for r in 1..=n {
                for s in r..=n {
                    left += &f(alg, i + 2 * r - 1).mul(&f(alg, i + 2 * s)).expect("same algebra");
                    right += &f(alg, i + 2 * r).mul(&f(alg, i + 2 * s + 1)).expect("same algebra");
                }
            }
            let fi = f(alg, i);
            let lin = (1..=n).fold(half_k.clone(), |acc, r| &acc - &alpha(alg, i + 2 * r));
            let tail = (1..=n).fold(Element::zero(alg), |acc, r| &acc + &f(alg, i + 2 * r));
            let mut out = &fi.mul(&left).expect("same algebra") - &right.mul(&fi).expect("same algebra");
            out += &fi.scale(&lin);
            out += &tail.scale(&alpha(alg, i));
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn pii_values() {
        let a = Algebra::pii();
        let fl = FlowSpec::standard(a);
        assert_eq!(fl.d_t(&Element::gen(a, 2)).unwrap().to_string(), "-f0 + f1");
    }

    #[test]
    fn cyclic_even_value() {
        let a = Algebra::al(2).unwrap();
        let fl = FlowSpec::standard(a);
        let expect = &(&Element::gen(a, 0).mul(&Element::gen(a, 1)).unwrap()
            - &Element::gen(a, 2).mul(&Element::gen(a, 0)).unwrap())
            + &Element::scalar(a, Scalar::alpha(0));
        assert_eq!(fl.rhs(0), &expect);
    }

    #[test]
    fn cyclic_odd_value() {
        let a = Algebra::al(3).unwrap();
        let fl = FlowSpec::standard(a);
        let g = |i| Element::gen(a, i);
        let lin = &(k_sum(a) * Scalar::ratio(1, 2)) - &Scalar::alpha(2);
        let expect = &(&(&Element::product(a, &[g(0), g(1), g(2)]).unwrap() - &Element::product(a, &[g(2), g(3), g(0)]).unwrap())
            + &g(0).scale(&lin))
            + &g(2).scale(&Scalar::alpha(0));
        assert_eq!(fl.rhs(0), &expect);
    }

    #[test]
    fn square_follows_leibniz() {
        let a = Algebra::pii();
        let fl = FlowSpec::standard(a);
        let f2 = Element::gen(a, 2);
        let d = fl.d_t(&f2.mul(&f2).unwrap()).unwrap();
        let df2 = fl.rhs(2);
        assert_eq!(d, &df2.mul(&f2).unwrap() + &f2.mul(df2).unwrap());
    }
}
