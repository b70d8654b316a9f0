use alloc::format;

use super::FlowSpec;
use crate::ncalgebra::{Element, Family, NcError};
use crate::report::{Check, Report, Residual};
use crate::scalars::Scalar;

/// For every pair `(i, j)`: `[d f_i, f_j] + [f_i, d f_j] - d([f_i, f_j])`.
pub fn check_flow_preserves_relations(flow: &FlowSpec) -> Report {
    let alg = flow.algebra();
    let mut rep = Report::new(format!("flow preserves relations [{alg}]"));
    for i in alg.gens() {
        for j in alg.gens().filter(|&j| j > i) {
            let r = (|| -> Result<Element, NcError> {
                let (fi, fj) = (Element::gen(alg, i), Element::gen(alg, j));
                let lhs = &flow.rhs(i).commutator(&fj)? + &fi.commutator(flow.rhs(j))?;
                Ok(&lhs - &flow.d_t(&alg.defining_commutator(i, j))?)
            })();
            rep.push(Check::zero(format!("pair ({i},{j})"), Residual::from_result(r)));
        }
    }
    rep
}

/// The first-integral relations of each flow family.
pub fn check_conserved(flow: &FlowSpec) -> Report {
    let alg = flow.algebra();
    let mut rep = Report::new(format!("conserved quantities [{alg}]"));
    let k = flow.k();
    let sum = |it: &mut dyn Iterator<Item = u8>| it.fold(Element::zero(alg), |acc, i| &acc + &Element::gen(alg, i));
    match alg.family() {
        Family::Pii => {
            let r = (|| -> Result<Element, NcError> {
                let f2 = Element::gen(alg, 2);
                let q = &(&Element::gen(alg, 0) + &Element::gen(alg, 1)) + &f2.mul(&f2)?;
                Ok(&flow.d_t(&q)? - &Element::scalar(alg, k.clone()))
            })();
            rep.push(Check::zero("d(f0 + f1 + f2^2) = k", Residual::from_result(r)));
        }
        Family::Al if alg.rank() % 2 == 0 => {
            let total = sum(&mut alg.gens());
            let r = flow.d_t(&total).map(|d| &d - &Element::scalar(alg, k.clone()));
            rep.push(Check::zero("d(sum f) = k", Residual::from_result(r)));
        }
        Family::Al => {
            let half = &k * &Scalar::ratio(1, 2);
            for (name, parity) in [("even", 0u8), ("odd", 1u8)] {
                let part = sum(&mut alg.gens().filter(|i| i % 2 == parity));
                let r = flow.d_t(&part).map(|d| &d - &part.scale(&half));
                rep.push(Check::zero(format!("d(sum {name} f) = (k/2) sum {name} f"), Residual::from_result(r)));
            }
        }
    }
    rep
}
