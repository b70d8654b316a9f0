use qpain_core::dynamics::{check_conserved, check_flow_preserves_relations, FlowSpec};
use qpain_core::ncalgebra::{Algebra, Element};
use qpain_core::report::Expect;
use qpain_core::scalars::Scalar;

fn algebras() -> Vec<Algebra> {
    let mut v = vec![Algebra::pii()];
    v.extend((2..=5).map(|l| Algebra::al(l).unwrap()));
    v
}

#[test]
fn every_flow_preserves_the_relations() {
    for alg in algebras() {
        let rep = check_flow_preserves_relations(&FlowSpec::standard(alg));
        assert!(rep.all_passed(), "{rep}");
        let n = alg.ngens() as usize;
        assert_eq!(rep.checks.len(), n * (n - 1) / 2);
    }
}

#[test]
fn dropping_a_constant_term_is_invisible_to_the_relation_check() {
    let alg = Algebra::al(2).unwrap();
    let std = FlowSpec::standard(alg);
    let mut rhs: Vec<Element> = alg.gens().map(|i| std.rhs(i).clone()).collect();
    rhs[0] = &rhs[0] - &Element::scalar(alg, Scalar::alpha(0));
    let rep = check_flow_preserves_relations(&FlowSpec::custom(alg, rhs));
    assert!(rep.all_passed(), "{rep}");
}

#[test]
fn conserved_relations_hold() {
    for alg in algebras() {
        let rep = check_conserved(&FlowSpec::standard(alg));
        assert!(rep.all_passed(), "{rep}");
        assert!(rep.checks.iter().all(|c| c.expect == Expect::Zero));
    }
}

#[test]
fn flipping_a_quadratic_sign_breaks_the_relations() {
    let alg = Algebra::al(2).unwrap();
    let std = FlowSpec::standard(alg);
    let mut rhs: Vec<Element> = alg.gens().map(|i| std.rhs(i).clone()).collect();
    let f = |i| Element::gen(alg, i);
    rhs[0] = &rhs[0] - &f(0).mul(&f(1)).unwrap().scale(&Scalar::int(2));
    let rep = check_flow_preserves_relations(&FlowSpec::custom(alg, rhs));
    assert!(!rep.all_passed(), "{rep}");
}

mod leibniz {
    use super::*;
    use proptest::prelude::*;
    use qpain_core::scalars::Sym;

    fn algebra(k: usize) -> Algebra {
        match k {
            0 => Algebra::pii(),
            _ => Algebra::al(k as u8 + 1).unwrap(),
        }
    }

    fn coefficient(k: i64, s: usize) -> Scalar {
        let base = Scalar::int(k);
        match s {
            1 => &base * &Scalar::hbar(),
            2 => &base * &Scalar::sym(Sym::T),
            3 => &base * &Scalar::sym(Sym::E),
            _ => base,
        }
    }

    type Word = Vec<(u8, i32)>;

    fn raw() -> impl Strategy<Value = Vec<(i64, usize, Word)>> {
        let factor = (0u8..10, -1i32..=2);
        prop::collection::vec((-3i64..=3, 0usize..4, prop::collection::vec(factor, 0..=3)), 1..=3)
    }

    fn factor(alg: Algebra, inv: u8, g: u8, p: i32) -> Element {
        let g = g % alg.ngens();
        match p {
            p if p < 0 && g == inv => Element::inv_power(alg, g, &Scalar::sym(Sym::T), p).unwrap(),
            0 => Element::one(alg),
            p => Element::gen(alg, g).pow(p.unsigned_abs()).unwrap(),
        }
    }

    fn build(alg: Algebra, inv: u8, raw: &[(i64, usize, Word)]) -> Element {
        raw.iter().fold(Element::zero(alg), |acc, (k, s, w)| {
            let t = w.iter().fold(Element::scalar(alg, coefficient(*k, *s)), |t, &(g, p)| t.mul(&factor(alg, inv, g, p)).unwrap());
            &acc + &t
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn derivative_of_product(k in 0usize..4, inv in 0u8..10, a in raw(), b in raw()) {
            let alg = algebra(k);
            let inv = inv % alg.ngens();
            let fl = FlowSpec::standard(alg);
            let (a, b) = (build(alg, inv, &a), build(alg, inv, &b));
            let lhs = fl.d_t(&a.mul(&b).unwrap()).unwrap();
            let rhs = &fl.d_t(&a).unwrap().mul(&b).unwrap() + &a.mul(&fl.d_t(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivative_commutes_with_normal_ordering(k in 0usize..4, inv in 0u8..10, word in prop::collection::vec((0u8..10, -1i32..=2), 1..=4)) {
            let alg = algebra(k);
            let inv = inv % alg.ngens();
            let fl = FlowSpec::standard(alg);
            let fs: Vec<Element> = word.iter().map(|&(g, p)| factor(alg, inv, g, p)).collect();
            // Leibniz on the raw word, before any reordering.
            let mut by_word = Element::zero(alg);
            for k in 0..fs.len() {
                let mut t = Element::one(alg);
                for (j, x) in fs.iter().enumerate() {
                    let y = if j == k { fl.d_t(x).unwrap() } else { x.clone() };
                    t = t.mul(&y).unwrap();
                }
                by_word += &t;
            }
            let canonical = fl.d_t(&Element::product(alg, &fs).unwrap()).unwrap();
            prop_assert_eq!(canonical, by_word);
        }
    }
}
