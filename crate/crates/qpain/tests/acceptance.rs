//! One PASS/FAIL line per acceptance criterion, with timings.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use qpain::props;
use qpain_core::contiguity::{derive_pii, derive_piv, derive_pv, DiscreteSystem};
use qpain_core::dynamics::{check_conserved, pv_w_gauge, verify_scalar_p34, verify_scalar_pii, verify_scalar_piv, verify_scalar_pv_w, FlowSpec};
use qpain_core::ncalgebra::Algebra;
use qpain_core::report::{Expect, Report, Residual};
use qpain_core::scalars::{Scalar, Sym, SymMap};
use qpain_core::weyl::{check_commutes_with_flow, check_group_relations, check_preserves_relations};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<Algebra> {
    std::iter::once(Algebra::pii()).chain((2..=5).map(|l| Algebra::al(l).unwrap())).collect()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reps: &[Report]) -> Outcome {
    let failed: Vec<String> = reps.iter().flat_map(|r| r.failures().map(move |c| format!("{}: {}", r.title, c.label))).collect();
    let total: usize = reps.iter().map(|r| r.checks.len()).sum();
    Outcome { ok: failed.is_empty(), detail: if failed.is_empty() { format!("{total} checks") } else { failed.join("; ") } }
}

fn within(mut o: Outcome, took: Duration, limit: Option<u64>) -> Outcome {
    if let Some(s) = limit {
        if took > Duration::from_secs(s) {
            o.ok = false;
            o.detail = format!("{}; over the {s} s budget", o.detail);
        }
    }
    o
}

fn group_laws() -> Outcome {
    from_reports(&algebras().into_iter().map(check_group_relations).collect::<Vec<_>>())
}

fn preservation() -> Outcome {
    from_reports(&algebras().into_iter().flat_map(|a| [check_preserves_relations(a), check_commutes_with_flow(a)]).collect::<Vec<_>>())
}

fn conserved() -> Outcome {
    from_reports(&algebras().into_iter().map(|a| check_conserved(&FlowSpec::standard(a))).collect::<Vec<_>>())
}

/// Nonzero and still regular at hbar = 0 after dividing by hbar^2.
fn divisible_by_hbar_squared(r: &Residual) -> bool {
    let Residual::Element(e) = r else { return false };
    let inv_h2 = Scalar::hbar().powi(-2).unwrap();
    let at_zero: SymMap = [(Sym::Hbar, Scalar::zero())].into_iter().collect();
    !e.is_zero() && e.scale(&inv_h2).subst_scalars(&at_zero).is_ok()
}

fn scalar_reductions() -> Outcome {
    let exact = [verify_scalar_pii(), verify_scalar_p34(), verify_scalar_piv()];
    let mut o = from_reports(&exact);
    for rep in &exact[1..] {
        for c in rep.checks.iter().filter(|c| c.expect == Expect::Nonzero) {
            if !divisible_by_hbar_squared(&c.residual) {
                o.ok = false;
                o.detail = format!("{}; {} control residual {} is not a multiple of hbar^2", o.detail, rep.title, c.residual);
            }
        }
    }
    let w = verify_scalar_pv_w();
    if !w.all_passed() || pv_w_gauge(&w).is_none() {
        o.ok = false;
        o.detail = format!("{}; w-equation has no recorded zero specialization", o.detail);
    }
    o
}

fn qpain(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qpain")).args(args).output().expect("spawn qpain")
}

fn contiguity() -> Outcome {
    let systems: Vec<Result<DiscreteSystem, _>> = vec![derive_pii(), derive_piv(), derive_pv()];
    let mut reps = Vec::new();
    let mut errors = Vec::new();
    for s in systems {
        match s {
            Ok(s) => {
                if !s.certificates.iter().all(|c| c.holds()) {
                    errors.push(format!("{}: certificate does not hold", s.name));
                }
                reps.push(s.report);
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let mut o = from_reports(&reps);
    let run = qpain(&["verify", "all"]);
    if run.status.code() != Some(0) {
        let out = String::from_utf8_lossy(&run.stdout);
        let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
        errors.push(format!("`qpain verify all` exited {:?} ({})", run.status.code(), fails.join(" | ")));
    }
    if !errors.is_empty() {
        o.ok = false;
        o.detail = format!("{}; {}", o.detail, errors.join("; "));
    }
    o
}

fn engine_properties() -> Outcome {
    let algs = algebras();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let checks = [
        props::associativity(&mut rng, &algs, 300),
        props::leibniz(&mut rng, &algs, 200),
        props::homomorphism(&mut rng, &algs, 200),
        props::scalar_field_laws(&mut rng, 200),
        props::classical_limit(&mut rng, &algs, 200),
    ];
    let mut rep = Report::new("randomized laws");
    checks.into_iter().for_each(|c| rep.push(c));
    from_reports(&[rep])
}

fn determinism() -> Outcome {
    let derive = |t: &str, f: &str| qpain(&["derive", t, "--format", f]).stdout;
    let mut bad = Vec::new();
    if derive("pv", "structured") != derive("pv", "structured") {
        bad.push("pv structured output differs between runs".to_string());
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/testdata");
    for t in ["pii", "piv", "pv"] {
        for (f, ext) in [("text", "txt"), ("latex", "tex"), ("structured", "json")] {
            let name = format!("derive_{t}.{ext}");
            if std::fs::read(dir.join(&name)).ok() != Some(derive(t, f)) {
                bad.push(format!("{name} differs"));
            }
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "9 golden files match".into() } else { bad.join("; ") } }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 7] = [
        ("group laws", group_laws, Some(10)),
        ("preservation", preservation, Some(30)),
        ("conserved quantities", conserved, None),
        ("scalar reductions", scalar_reductions, None),
        ("contiguity", contiguity, Some(60)),
        ("engine properties", engine_properties, None),
        ("determinism", determinism, None),
    ];
    let mut failed = Vec::new();
    println!();
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let o = within(o, took, limit);
        println!("{} {}. {name} ({:.1} s): {}", if o.ok { "PASS" } else { "FAIL" }, k + 1, took.as_secs_f64(), o.detail);
        if !o.ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
