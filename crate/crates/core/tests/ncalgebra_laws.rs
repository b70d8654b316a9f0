use std::collections::BTreeMap;

use proptest::prelude::*;
use qpain_core::ncalgebra::{partial_fraction_merge, Algebra, Element, Family};
use qpain_core::scalars::{Scalar, Sym, SymMap};

fn algebra(k: usize) -> Algebra {
    match k {
        0 => Algebra::pii(),
        _ => Algebra::al(k as u8 + 1).unwrap(),
    }
}

fn coefficient(k: i64, s: usize) -> Scalar {
    let syms = [None, Some(Sym::Hbar), Some(Sym::T), Some(Sym::Alpha(0))];
    let base = Scalar::int(k);
    match syms[s] {
        Some(v) => &base * &Scalar::sym(v),
        None => base,
    }
}

fn shift(s: usize) -> Scalar {
    [Scalar::zero(), Scalar::sym(Sym::X), Scalar::sym(Sym::T) + Scalar::int(1)][s].clone()
}

type RawTerm = (i64, usize, Vec<(u8, i32, usize)>);

fn raw_element() -> impl Strategy<Value = Vec<RawTerm>> {
    let factor = (0u8..10, -2i32..=2, 0usize..3);
    prop::collection::vec((-3i64..=3, 0usize..4, prop::collection::vec(factor, 0..=2)), 1..=3)
}

/// Builds an element; only generator `inv` may carry negative powers.
fn build(alg: Algebra, inv: u8, raw: &[RawTerm]) -> Element {
    let mut e = Element::zero(alg);
    for (k, s, word) in raw {
        let mut t = Element::scalar(alg, coefficient(*k, *s));
        for &(g, p, sh) in word {
            let g = g % alg.ngens();
            let f = match p {
                0 => continue,
                p if p < 0 && g == inv => Element::inv_power(alg, g, &shift(sh), p).unwrap(),
                p => Element::gen(alg, g).pow(p.unsigned_abs()).unwrap(),
            };
            t = t.mul(&f).unwrap();
        }
        e += &t;
    }
    e
}

/// Straightforward rewriting with the base relations only, always at the
/// rightmost out-of-order pair. Words hold positive generators.
fn oracle(alg: Algebra, word: &[u8]) -> BTreeMap<Vec<u8>, Scalar> {
    let h = Scalar::hbar();
    let n = alg.ngens();
    let mut out: BTreeMap<Vec<u8>, Scalar> = BTreeMap::new();
    let mut todo = vec![(Scalar::one(), word.to_vec())];
    while let Some((c, w)) = todo.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).rev().find(|&k| w[k] > w[k + 1]) else {
            let e = out.entry(w).or_insert_with(Scalar::zero);
            *e = &*e + &c;
            continue;
        };
        let (j, i) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        todo.push((c.clone(), swapped));
        let splice = |mid: &[u8]| {
            let mut v = w[..k].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[k + 2..]);
            v
        };
        match alg.family() {
            Family::Pii => match (j, i) {
                (1, 0) => todo.push((&c * &(Scalar::int(2) * h.clone()), splice(&[2]))),
                (2, 0) => todo.push((-&(&c * &h), splice(&[]))),
                (2, 1) => todo.push((&c * &h, splice(&[]))),
                _ => {}
            },
            Family::Al => {
                if (j + 1) % n == i {
                    todo.push((&c * &h, splice(&[])));
                } else if (i + 1) % n == j {
                    todo.push((-&(&c * &h), splice(&[])));
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn from_words(alg: Algebra, m: &BTreeMap<Vec<u8>, Scalar>) -> Element {
    let mut e = Element::zero(alg);
    for (w, c) in m {
        let gens: Vec<Element> = w.iter().map(|&g| Element::gen(alg, g)).collect();
        e += &Element::product(alg, &gens).unwrap().scale(c);
    }
    e
}

fn hbar_zero() -> SymMap {
    [(Sym::Hbar, Scalar::zero())].into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn multiplication_is_associative(k in 0usize..5, inv in 0u8..10, a in raw_element(), b in raw_element(), c in raw_element()) {
        let alg = algebra(k);
        let inv = inv % alg.ngens();
        let (a, b, c) = (build(alg, inv, &a), build(alg, inv, &b), build(alg, inv, &c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn agrees_with_base_relation_rewriting(k in 0usize..5, word in prop::collection::vec(0u8..10, 0..=6)) {
        let alg = algebra(k);
        let word: Vec<u8> = word.into_iter().map(|g| g % alg.ngens()).collect();
        let gens: Vec<Element> = word.iter().map(|&g| Element::gen(alg, g)).collect();
        let direct = Element::product(alg, &gens).unwrap();
        prop_assert_eq!(direct, from_words(alg, &oracle(alg, &word)));
    }

    #[test]
    fn commutative_when_hbar_vanishes(k in 0usize..5, inv in 0u8..10, a in raw_element(), b in raw_element()) {
        let alg = algebra(k);
        let inv = inv % alg.ngens();
        let (a, b) = (build(alg, inv, &a), build(alg, inv, &b));
        let c = a.commutator(&b).unwrap().subst_scalars(&hbar_zero()).unwrap();
        prop_assert!(c.is_zero(), "residual {}", c);
    }

    #[test]
    fn shifted_powers_invert(k in 0usize..5, g in 0u8..10, n in 1i32..=3, sh in 0usize..3) {
        let alg = algebra(k);
        let g = g % alg.ngens();
        let c = shift(sh);
        let up = Element::inv_power(alg, g, &c, n).unwrap();
        let down = Element::inv_power(alg, g, &c, -n).unwrap();
        prop_assert_eq!(up.mul(&down).unwrap(), Element::one(alg));
        prop_assert_eq!(down.mul(&up).unwrap(), Element::one(alg));
    }

    #[test]
    fn merged_fractions_clear_to_one(n1 in 1i32..=2, n2 in 1i32..=2, n3 in 0i32..=2) {
        let alg = Algebra::al(3).unwrap();
        let mut fs = vec![(Scalar::zero(), -n1), (Scalar::sym(Sym::X), -n2)];
        if n3 > 0 {
            fs.push((Scalar::sym(Sym::T) + Scalar::int(1), -n3));
        }
        let merged = partial_fraction_merge(alg, 0, &fs).unwrap();
        let mut cleared = merged;
        for (c, n) in &fs {
            cleared = cleared.mul(&Element::inv_power(alg, 0, c, -n).unwrap()).unwrap();
        }
        prop_assert_eq!(cleared, Element::one(alg));
    }
}

#[test]
fn defining_relations_are_reproduced() {
    let h = Scalar::hbar();
    let pii = Algebra::pii();
    let f = |i| Element::gen(pii, i);
    let hs = |c: Scalar| Element::scalar(pii, c);
    assert_eq!(f(1).commutator(&f(0)).unwrap(), f(2).scale(&(Scalar::int(2) * h.clone())));
    assert_eq!(f(0).commutator(&f(2)).unwrap(), hs(h.clone()));
    assert_eq!(f(2).commutator(&f(1)).unwrap(), hs(h.clone()));
    for l in 2..=5u8 {
        let alg = Algebra::al(l).unwrap();
        let n = l + 1;
        for i in 0..n {
            for j in 0..n {
                let expect = if j == (i + 1) % n {
                    Element::scalar(alg, h.clone())
                } else if i == (j + 1) % n {
                    Element::scalar(alg, -h.clone())
                } else {
                    Element::zero(alg)
                };
                let got = Element::gen(alg, i).commutator(&Element::gen(alg, j)).unwrap();
                assert_eq!(got, expect, "l={l} [f{i}, f{j}]");
            }
        }
    }
}

#[test]
fn quadratic_power_rule_matches_repeated_rewriting() {
    let alg = Algebra::pii();
    let h = Scalar::hbar();
    let f0 = |k: i32| {
        if k == 0 {
            Element::one(alg)
        } else {
            Element::inv_power(alg, 0, &Scalar::zero(), k).unwrap()
        }
    };
    let closed = |n: i32| {
        let nn = Scalar::int(n as i64);
        let a = f0(n).mul(&Element::gen(alg, 1)).unwrap();
        let b = f0(n - 1).mul(&Element::gen(alg, 2)).unwrap().scale(&(&(Scalar::int(2) * nn.clone()) * &h));
        let c = f0(n - 2).scale(&(&(&nn * &Scalar::int(n as i64 - 1)) * &(&h * &h)));
        &(&a + &b) - &c
    };
    for n in 1..=4 {
        let mut word = vec![1u8];
        word.extend(std::iter::repeat(0u8).take(n as usize));
        assert_eq!(closed(n), from_words(alg, &oracle(alg, &word)), "n = {n}");
    }
    // For negative n, multiplying by f0^{-n} on the right must give back f1.
    for n in -4..=-1 {
        let back = closed(n).mul(&f0(-n)).unwrap();
        assert_eq!(back, Element::gen(alg, 1), "n = {n}");
    }
}
