//! Seeded randomized law checks for the verify command.

use qpain_core::dynamics::FlowSpec;
use qpain_core::ncalgebra::{Algebra, Element};
use qpain_core::report::{Check, Residual};
use qpain_core::scalars::{Poly, Scalar, Sym, SymMap};
use qpain_core::weyl::{BacklundTable, Letter, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const POOL: [Sym; 5] = [Sym::Hbar, Sym::T, Sym::E, Sym::Alpha(0), Sym::Alpha(1)];

pub fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut t = Poly::int(rng.gen_range(-4..=4));
        for _ in 0..rng.gen_range(0..3) {
            t = &t * &Poly::var(POOL[rng.gen_range(0..POOL.len())]).pow(rng.gen_range(0..=2));
        }
        p += &t;
    }
    p
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let n = random_poly(rng);
    let d = random_poly(rng);
    if d.is_zero() {
        Scalar::from_poly(n)
    } else {
        Scalar::new(n, d).expect("nonzero denominator")
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    let k = Scalar::int(rng.gen_range(-3..=3));
    match rng.gen_range(0..4) {
        0 => k,
        1 => &k * &Scalar::hbar(),
        2 => &k * &Scalar::sym(Sym::T),
        _ => &k * &Scalar::alpha(0),
    }
}

fn shift(rng: &mut ChaCha8Rng) -> Scalar {
    match rng.gen_range(0..3) {
        0 => Scalar::zero(),
        1 => Scalar::sym(Sym::X),
        _ => &Scalar::sym(Sym::T) + &Scalar::one(),
    }
}

/// Up to three terms of up to two factors; only `inv` may be inverted.
pub fn random_element(rng: &mut ChaCha8Rng, alg: Algebra, inv: Option<u8>) -> Element {
    let mut e = Element::zero(alg);
    for _ in 0..rng.gen_range(1..=3) {
        let mut t = Element::scalar(alg, coefficient(rng));
        for _ in 0..rng.gen_range(0..=2) {
            let g = rng.gen_range(0..alg.ngens());
            let p: i32 = rng.gen_range(-2..=2);
            let f = match p {
                0 => continue,
                p if p < 0 && Some(g) == inv => Element::inv_power(alg, g, &shift(rng), p).expect("shifted power"),
                p => Element::gen(alg, g).pow(p.unsigned_abs()).expect("power"),
            };
            t = t.mul(&f).expect("one inverted generator always orders");
        }
        e += &t;
    }
    e
}

/// Runs `law` for `n` cases; the first nonzero residual or error fails it.
fn law(label: &str, n: usize, mut case: impl FnMut(usize) -> Result<Residual, String>) -> Check {
    for k in 0..n {
        match case(k) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => return Check::zero(label, r).with_note(format!("case {k} of {n}")),
            Err(e) => return Check::zero(label, Residual::Error(e)).with_note(format!("case {k} of {n}")),
        }
    }
    Check::zero(label, Residual::Scalar(Scalar::zero())).with_note(format!("{n} cases"))
}

fn pick(algs: &[Algebra], k: usize) -> Algebra {
    algs[k % algs.len()]
}

pub fn scalar_field_laws(rng: &mut ChaCha8Rng, n: usize) -> Check {
    law("scalar field laws", n, |_| {
        let (a, b, c) = (random_scalar(rng), random_scalar(rng), random_scalar(rng));
        let mut r = &(&(&a + &b) + &c) - &(&a + &(&c + &b));
        r = &r + &(&(&(&a * &b) * &c) - &(&a * &(&c * &b)));
        r = &r + &(&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c)));
        if !a.is_zero() {
            r = &r + &(&(&a * &a.inv().map_err(|e| e.to_string())?) - &Scalar::one());
        }
        Ok(Residual::Scalar(r))
    })
}

pub fn associativity(rng: &mut ChaCha8Rng, algs: &[Algebra], n: usize) -> Check {
    law("multiplication is associative", n, |k| {
        let alg = pick(algs, k);
        let inv = Some(rng.gen_range(0..alg.ngens()));
        let (a, b, c) = (random_element(rng, alg, inv), random_element(rng, alg, inv), random_element(rng, alg, inv));
        let s = |e: qpain_core::ncalgebra::NcError| e.to_string();
        let left = a.mul(&b).map_err(s)?.mul(&c).map_err(s)?;
        let right = a.mul(&b.mul(&c).map_err(s)?).map_err(s)?;
        Ok(Residual::Element(&left - &right))
    })
}

pub fn leibniz(rng: &mut ChaCha8Rng, algs: &[Algebra], n: usize) -> Check {
    law("d/dt obeys Leibniz", n, |k| {
        let alg = pick(algs, k);
        let flow = FlowSpec::standard(alg);
        let inv = Some(rng.gen_range(0..alg.ngens()));
        let (a, b) = (random_element(rng, alg, inv), random_element(rng, alg, inv));
        let s = |e: qpain_core::ncalgebra::NcError| e.to_string();
        let lhs = flow.d_t(&a.mul(&b).map_err(s)?).map_err(s)?;
        let rhs = &flow.d_t(&a).map_err(s)?.mul(&b).map_err(s)? + &a.mul(&flow.d_t(&b).map_err(s)?).map_err(s)?;
        Ok(Residual::Element(&lhs - &rhs))
    })
}

fn random_letter(rng: &mut ChaCha8Rng, alg: Algebra) -> Letter {
    match rng.gen_range(0..alg.nparams() + 2) {
        i if i < alg.nparams() => Letter::S(i),
        i if i == alg.nparams() => Letter::Pi,
        _ => Letter::PiInv,
    }
}

pub fn homomorphism(rng: &mut ChaCha8Rng, algs: &[Algebra], n: usize) -> Check {
    law("letters are homomorphisms", n, |k| {
        let alg = pick(algs, k);
        let l = random_letter(rng, alg);
        // The inverted generator must keep an affine image.
        let inv = match l {
            Letter::S(i) => i,
            _ => rng.gen_range(0..alg.ngens()),
        };
        let t = BacklundTable::new(alg);
        let w = Word::new([l]);
        let (a, b) = (random_element(rng, alg, Some(inv)), random_element(rng, alg, Some(inv)));
        let s = |e: &dyn std::fmt::Display| e.to_string();
        let lhs = t.apply(&w, &a.mul(&b).map_err(|e| s(&e))?).map_err(|e| s(&e))?;
        let rhs = t.apply(&w, &a).map_err(|e| s(&e))?.mul(&t.apply(&w, &b).map_err(|e| s(&e))?).map_err(|e| s(&e))?;
        Ok(Residual::Element(&lhs - &rhs))
    })
}

pub fn classical_limit(rng: &mut ChaCha8Rng, algs: &[Algebra], n: usize) -> Check {
    let zero: SymMap = [(Sym::Hbar, Scalar::zero())].into_iter().collect();
    law("commutative at hbar = 0", n, |k| {
        let alg = pick(algs, k);
        let inv = Some(rng.gen_range(0..alg.ngens()));
        let (a, b) = (random_element(rng, alg, inv), random_element(rng, alg, inv));
        let c = a.commutator(&b).and_then(|c| c.subst_scalars(&zero)).map_err(|e| e.to_string())?;
        Ok(Residual::Element(c))
    })
}
