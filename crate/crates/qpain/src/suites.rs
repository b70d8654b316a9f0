//! Verification suites behind `qpain verify`.

use qpain_core::contiguity::{check_equation, derive_pii, derive_piv, derive_pv, ContiguityError, DiscreteSystem};
use qpain_core::dynamics::{check_conserved, check_flow_preserves_relations, verify_scalar_p34, verify_scalar_pii, verify_scalar_piv, verify_scalar_pv_w, FlowSpec};
use qpain_core::ncalgebra::Algebra;
use qpain_core::report::{Check, Expect, Report, Residual};
use qpain_core::scalars::Scalar;
use qpain_core::weyl::{check_commutes_with_flow, check_group_relations, check_preserves_relations};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::props;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Pii,
    Al(u8),
    All,
}

/// Case counts for the randomized laws.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub seed: u64,
    pub associativity: usize,
    pub leibniz: usize,
    pub homomorphism: usize,
    pub scalar_laws: usize,
    pub classical: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { seed: 0x5eed, associativity: 300, leibniz: 200, homomorphism: 200, scalar_laws: 200, classical: 200 }
    }
}

fn algebras(sel: Selector) -> Vec<Algebra> {
    match sel {
        Selector::Pii => vec![Algebra::pii()],
        Selector::Al(l) => vec![Algebra::al(l).expect("rank checked by the caller")],
        Selector::All => std::iter::once(Algebra::pii()).chain((2..=5).map(|l| Algebra::al(l).expect("rank"))).collect(),
    }
}

pub fn property_report(algs: &[Algebra], b: &Budget) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let names: Vec<String> = algs.iter().map(|a| a.to_string()).collect();
    let mut rep = Report::new(format!("randomized laws [{}] seed {}", names.join(", "), b.seed));
    rep.push(props::scalar_field_laws(&mut rng, b.scalar_laws));
    rep.push(props::associativity(&mut rng, algs, b.associativity));
    rep.push(props::leibniz(&mut rng, algs, b.leibniz));
    rep.push(props::homomorphism(&mut rng, algs, b.homomorphism));
    rep.push(props::classical_limit(&mut rng, algs, b.classical));
    rep
}

pub fn contiguity_report(r: Result<DiscreteSystem, ContiguityError>, name: &str) -> Report {
    match r {
        Ok(sys) => sys.report,
        Err(e) => {
            let mut rep = Report::new(format!("contiguity {name}"));
            rep.push(Check::zero("derivation", Residual::Error(e.to_string())));
            rep
        }
    }
}

/// The up-shift relation of PII with `a1 + hbar` in place of `a1`.
fn contiguity_control() -> Report {
    let mut rep = Report::new("contiguity controls [pii]");
    if let Ok(sys) = derive_pii() {
        let mut e = sys.equations[0].clone();
        e.rhs_inverse[0].numerator = &Scalar::alpha(1) + &Scalar::hbar();
        let r = match check_equation(sys.alg, &e) {
            Ok((r, _)) => Residual::Element(r),
            Err(e) => Residual::Error(e),
        };
        rep.push(Check::control(format!("control: {}", e.text()), r));
    }
    rep
}

fn algebra_reports(alg: Algebra) -> Vec<Report> {
    let flow = FlowSpec::standard(alg);
    vec![
        check_flow_preserves_relations(&flow),
        check_conserved(&flow),
        check_group_relations(alg),
        check_preserves_relations(alg),
        check_commutes_with_flow(alg),
    ]
}

pub fn run(sel: Selector, b: &Budget) -> Vec<Report> {
    let algs = algebras(sel);
    let mut out = vec![property_report(&algs, b)];
    for &alg in &algs {
        out.extend(algebra_reports(alg));
        match (alg.family(), alg.rank()) {
            (qpain_core::ncalgebra::Family::Pii, _) => {
                out.push(verify_scalar_pii());
                out.push(verify_scalar_p34());
                out.push(contiguity_report(derive_pii(), "pii"));
                out.push(contiguity_control());
            }
            (_, 2) => {
                out.push(verify_scalar_piv());
                out.push(contiguity_report(derive_piv(), "piv"));
            }
            (_, 3) => {
                out.push(verify_scalar_pv_w());
                out.push(contiguity_report(derive_pv(), "pv"));
            }
            _ => {}
        }
    }
    out
}

/// Renders reports; negative controls are listed only on request.
pub fn render(reports: &[Report], show_controls: bool) -> String {
    let mut s = String::new();
    for r in reports {
        let shown = Report {
            title: r.title.clone(),
            checks: r.checks.iter().filter(|c| show_controls || c.expect != Expect::Nonzero).cloned().collect(),
        };
        s.push_str(&shown.to_string());
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    s.push_str(&format!("{total} checks, {failed} failed\n"));
    s
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::all_passed)
}
