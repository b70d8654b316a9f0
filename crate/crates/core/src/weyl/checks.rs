use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{BacklundTable, Letter, Word, WeylError};
use crate::dynamics::FlowSpec;
use crate::ncalgebra::{Algebra, Element, Family, Fraction};
use crate::report::{Check, Report, Residual};
use crate::scalars::Scalar;

fn rel(lhs: Vec<Letter>, rhs: Vec<Letter>) -> (Word, Word) {
    (Word::new(lhs), Word::new(rhs))
}

/// The defining relations of the extended affine Weyl group.
pub fn group_relations(alg: Algebra) -> Vec<(Word, Word)> {
    use Letter::{Pi, S};
    let n = alg.nparams();
    let mut out = Vec::new();
    for i in 0..n {
        out.push(rel(alloc::vec![S(i), S(i)], Vec::new()));
    }
    if alg.family() == Family::Al {
        for i in 0..n {
            let j = (i + 1) % n;
            out.push((Word::new([S(i), S(j)]).pow(3), Word::identity()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if a_is_zero(alg, i, j) {
                    out.push(rel(alloc::vec![S(i), S(j)], alloc::vec![S(j), S(i)]));
                }
            }
        }
    }
    out.push((Word::new([Pi]).pow(n as usize), Word::identity()));
    for i in 0..n {
        out.push(rel(alloc::vec![Pi, S(i)], alloc::vec![S((i + 1) % n), Pi]));
    }
    out
}

fn a_is_zero(alg: Algebra, i: u8, j: u8) -> bool {
    super::a_entry(alg, i, j) == 0
}

/// `lhs(a) - rhs(a)`, falling back to right fractions when an image leaves
/// the shifted-power fragment.
fn compare(table: &BacklundTable, lhs: &Word, rhs: &Word, a: &Element) -> Result<Residual, WeylError> {
    match (table.apply(lhs, a), table.apply(rhs, a)) {
        (Ok(x), Ok(y)) => return Ok(Residual::Element(&x - &y)),
        (Err(WeylError::NonInvertibleImage { .. }), _) | (_, Err(WeylError::NonInvertibleImage { .. })) => {}
        (Err(e), _) | (_, Err(e)) => return Err(e),
    }
    let q = Fraction::from_element(a)?;
    let x = table.apply_fraction(lhs, &q)?;
    let y = table.apply_fraction(rhs, &q)?;
    Ok(Residual::Fraction(x.sub(&y)?))
}

pub fn relation_check(table: &BacklundTable, lhs: &Word, rhs: &Word) -> Check {
    let alg = table.algebra();
    let label = format!("{lhs} = {rhs}");
    let run = || -> Result<Option<(String, Residual)>, WeylError> {
        for j in alg.gens() {
            let r = compare(table, lhs, rhs, &Element::gen(alg, j))?;
            if !r.is_zero() {
                return Ok(Some((format!("f{j}"), r)));
            }
        }
        for j in 0..alg.nparams() {
            let a = Scalar::alpha(j);
            let r = &table.params(lhs, &a)? - &table.params(rhs, &a)?;
            if !r.is_zero() {
                return Ok(Some((format!("a{j}"), Residual::Scalar(r))));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => Check::zero(label, Residual::Element(Element::zero(alg))),
        Ok(Some((on, r))) => Check::zero(label, r).with_note(format!("differs on {on}")),
        Err(e) => Check::zero(label, Residual::Error(format!("{e}"))),
    }
}

/// Each group relation applied to every generator and parameter.
pub fn check_group_relations(alg: Algebra) -> Report {
    let table = BacklundTable::new(alg);
    let mut rep = Report::new(format!("group relations [{alg}]"));
    for (lhs, rhs) in group_relations(alg) {
        rep.push(relation_check(&table, &lhs, &rhs));
    }
    rep
}

fn image(table: &BacklundTable, l: Letter, j: u8) -> Element {
    table.gen_image(l, j).unwrap_or_else(|| Element::gen(table.algebra(), j))
}

/// `[s(f_i), s(f_j)] = s([f_i, f_j])` for every letter and pair.
pub fn check_preserves_relations(alg: Algebra) -> Report {
    let table = BacklundTable::new(alg);
    let mut rep = Report::new(format!("letters preserve the relations [{alg}]"));
    for l in table.letters() {
        let w = Word::new([l]);
        let run = || -> Result<Option<(u8, u8, Element)>, WeylError> {
            for i in alg.gens() {
                for j in i + 1..alg.ngens() {
                    let lhs = image(&table, l, i).commutator(&image(&table, l, j))?;
                    let rhs = table.apply(&w, &alg.defining_commutator(i, j))?;
                    let r = &lhs - &rhs;
                    if !r.is_zero() {
                        return Ok(Some((i, j, r)));
                    }
                }
            }
            Ok(None)
        };
        let label = format!("{l} preserves every defining commutator");
        rep.push(match run() {
            Ok(None) => Check::zero(label, Residual::Element(Element::zero(alg))),
            Ok(Some((i, j, r))) => Check::zero(label, Residual::Element(r)).with_note(format!("pair (f{i}, f{j})")),
            Err(e) => Check::zero(label, Residual::Error(format!("{e}"))),
        });
    }
    rep
}

/// `s(d f_j) = d(s(f_j))` for every letter and generator.
pub fn check_commutes_with_flow(alg: Algebra) -> Report {
    let table = BacklundTable::new(alg);
    let flow = FlowSpec::standard(alg);
    let mut rep = Report::new(format!("letters commute with d/dt [{alg}]"));
    for l in table.letters() {
        let w = Word::new([l]);
        let run = || -> Result<Option<(u8, Element)>, WeylError> {
            for j in alg.gens() {
                let lhs = table.apply(&w, flow.rhs(j))?;
                let rhs = flow.d_t(&image(&table, l, j))?;
                let r = &lhs - &rhs;
                if !r.is_zero() {
                    return Ok(Some((j, r)));
                }
            }
            Ok(None)
        };
        let label = format!("{l} commutes with d/dt");
        rep.push(match run() {
            Ok(None) => Check::zero(label, Residual::Element(Element::zero(alg))),
            Ok(Some((j, r))) => Check::zero(label, Residual::Element(r)).with_note(format!("on f{j}")),
            Err(e) => Check::zero(label, Residual::Error(format!("{e}"))),
        });
    }
    rep
}
