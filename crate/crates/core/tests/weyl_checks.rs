use qpain_core::ncalgebra::{Algebra, Element};
use qpain_core::report::Residual;
use qpain_core::scalars::Scalar;
use qpain_core::weyl::{
    check_commutes_with_flow, check_group_relations, check_preserves_relations, relation_check, BacklundTable, Word,
};

fn algebras() -> Vec<Algebra> {
    let mut v = vec![Algebra::pii()];
    v.extend((2..=5).map(|l| Algebra::al(l).unwrap()));
    v
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn group_relations_hold_exactly() {
    for alg in algebras() {
        let rep = check_group_relations(alg);
        assert!(rep.all_passed(), "{rep}");
    }
}

#[test]
fn letters_preserve_relations_and_commute_with_the_flow() {
    for alg in algebras() {
        let rep = check_preserves_relations(alg);
        assert!(rep.all_passed(), "{rep}");
        let rep = check_commutes_with_flow(alg);
        assert!(rep.all_passed(), "{rep}");
    }
}

#[test]
fn false_relations_are_rejected() {
    let al3 = Algebra::al(3).unwrap();
    let table = BacklundTable::new(al3);
    // Needs nested inverses, so this exercises the fraction path.
    let c = relation_check(&table, &w("s0 s1 s0 s1"), &Word::identity());
    assert!(!c.passed(), "{c:?}");
    assert!(matches!(c.residual, Residual::Fraction(_)));
    let c = relation_check(&table, &w("s0 s1"), &w("s1 s0"));
    assert!(!c.passed());
    let c = relation_check(&table, &w("p s0"), &w("s0 p"));
    assert!(!c.passed());
    let pii = BacklundTable::new(Algebra::pii());
    assert!(!relation_check(&pii, &w("s0 s1"), &w("s1 s0")).passed());
}

#[test]
fn braid_form_agrees() {
    let al2 = Algebra::al(2).unwrap();
    let table = BacklundTable::new(al2);
    let c = relation_check(&table, &w("s0 s1 s0"), &w("s1 s0 s1"));
    assert!(c.passed(), "{c:?}");
}

#[test]
fn preservation_examples() {
    let pii = Algebra::pii();
    let t = BacklundTable::new(pii);
    let s0 = |i| t.apply(&w("s0"), &Element::gen(pii, i)).unwrap();
    let h = Scalar::hbar();
    assert_eq!(s0(0).commutator(&s0(2)).unwrap(), Element::scalar(pii, h.clone()));
    let expect = s0(2).scale(&(&Scalar::int(2) * &h));
    assert_eq!(s0(1).commutator(&s0(0)).unwrap(), expect);
    let al3 = Algebra::al(3).unwrap();
    let t = BacklundTable::new(al3);
    let s2 = |i| t.apply(&w("s2"), &Element::gen(al3, i)).unwrap();
    // f3 and f0 are neighbours on the cycle, so the residual against
    // s2([f3, f0]) = hbar is what vanishes.
    let residual = &s2(3).commutator(&s2(0)).unwrap() - &Element::scalar(al3, h);
    assert!(residual.is_zero());
}
