//! Multivariate polynomial gcd over Q.
//!
//! Most gcds met in practice are trivial, so the first stage tries to
//! prove coprimality by evaluation: if for every shared symbol `v` the
//! univariate images (other symbols set to integers that keep the
//! `v`-degree) have a constant gcd, the true gcd is constant. Otherwise a
//! subresultant remainder sequence runs in the shared symbol of least
//! degree, with contents split off recursively. Results are monic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Exps, Poly, Rat};
use super::sym::{Sym, NSYM};

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if a.len() == 1 || b.len() == 1 {
        return Poly::one().mul_exps(&a.min_exps().meet(&b.min_exps()));
    }
    let common = a.var_mask() & b.var_mask();
    if common == 0 {
        return Poly::one();
    }
    // Shared monomial factors first; what remains has none.
    let m = a.min_exps().meet(&b.min_exps());
    if !m.is_unit() {
        let a1 = a.div_exps(&m).expect("min exponent divides");
        let b1 = b.div_exps(&m).expect("min exponent divides");
        return gcd(&a1, &b1).mul_exps(&m);
    }
    if provably_coprime(a, b, common) {
        return Poly::one();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.monic();
    }
    let v = pick_main(a, b, common);
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(pa, pb, v);
    (&c * &g).monic()
}

fn pick_main(a: &Poly, b: &Poly, common: u32) -> Sym {
    (0..NSYM)
        .filter(|i| common & (1 << i) != 0)
        .map(Sym::from_index)
        .min_by_key(|&s| (a.degree_in(s).max(b.degree_in(s)), s))
        .expect("nonempty common set")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &Poly, v: Sym) -> Poly {
    let mut coeffs: Vec<Poly> = p.coeffs_in(v).into_values().collect();
    coeffs.sort_by_key(Poly::len);
    let mut acc = Poly::zero();
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Poly, v: Sym) -> Poly {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn subresultant_gcd(a: Poly, b: Poly, v: Sym) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = u32::from(a.degree_in(v) - b.degree_in(v));
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.coeff_in(v, a.degree_in(v));
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

/// `lc(b)^(deg a - deg b + 1) * a` reduced modulo `b` in `v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: Sym) -> Poly {
    let db = b.degree_in(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    let mut owed = i32::from(a.degree_in(v)) - i32::from(db) + 1;
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let shift = Exps::of(v, dr - db);
        r = &(&lb * &r) - &(&lr * &b.mul_exps(&shift));
        owed -= 1;
    }
    if owed > 0 {
        r = &r * &lb.pow(owed as u32);
    }
    r
}

const POINTS: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn provably_coprime(a: &Poly, b: &Poly, common: u32) -> bool {
    (0..NSYM)
        .filter(|i| common & (1 << i) != 0)
        .all(|vi| image_gcd_is_constant(a, b, vi))
}

fn image_gcd_is_constant(a: &Poly, b: &Poly, vi: usize) -> bool {
    let v = Sym::from_index(vi);
    for attempt in 0..3 {
        let point = |i: usize| Rat::from_integer(BigInt::from(POINTS[(i + 5 * attempt) % POINTS.len()]));
        let ua = image(a, vi, &point);
        let ub = image(b, vi, &point);
        // A vanishing leading coefficient could hide a factor.
        if ua.len() != usize::from(a.degree_in(v)) + 1 || ub.len() != usize::from(b.degree_in(v)) + 1 {
            continue;
        }
        return univariate_gcd_degree(ua, ub) == 0;
    }
    false
}

/// Dense image in symbol `vi` with every other symbol evaluated.
fn image(p: &Poly, vi: usize, point: &dyn Fn(usize) -> Rat) -> Vec<Rat> {
    let mut powers: BTreeMap<(usize, u16), Rat> = BTreeMap::new();
    let mut out = vec![Rat::zero(); usize::from(p.degree_in(Sym::from_index(vi))) + 1];
    for (e, c) in p.terms_desc() {
        let mut t = c.clone();
        for (i, &k) in e.0.iter().enumerate() {
            if i == vi || k == 0 {
                continue;
            }
            t *= &*powers
                .entry((i, k))
                .or_insert_with(|| num_traits::pow(point(i), usize::from(k)));
        }
        out[usize::from(e.0[vi])] += t;
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<Rat>, mut b: Vec<Rat>) -> usize {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") / &lb;
            let off = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[off + i] -= &q * bc;
            }
            a.pop();
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(s: Sym) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn shared_linear_factor() {
        let f = &v(Sym::X) + &v(Sym::Y);
        let a = &f * &(&v(Sym::T) - &Poly::one());
        let b = &f * &(&v(Sym::T) + &v(Sym::Hbar));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_is_one() {
        let a = &v(Sym::X) + &Poly::one();
        let b = &v(Sym::X) - &Poly::one();
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_with_monomial() {
        let a = &(&v(Sym::X) * &v(Sym::X)) * &(&v(Sym::Y) + &Poly::one());
        let b = &v(Sym::X) * &v(Sym::T);
        assert_eq!(gcd(&a, &b).to_string(), "x");
    }

    fn q(n: i64, d: i64) -> Poly {
        Poly::constant(Rat::new(n.into(), d.into()))
    }

    #[test]
    fn dense_coprime_inputs_finish() {
        let (h, e, a0, a1) = (v(Sym::Hbar), v(Sym::E), v(Sym::Alpha(0)), v(Sym::Alpha(1)));
        let d1 = &(&(&(&e * &e) * &a0) - &(&h * &h)) + &q(3, 4);
        let d2 = &(&h.pow(3) - &(&q(3, 2) * &a1)) - &q(1, 2);
        let n1 = &(&(&q(1, 4) * &e) + &(&q(3, 4) * &a1)) + &q(1, 2);
        let n2 = &(&q(-1, 2) * &(&a1 * &a1)) + &q(1, 2);
        let num = &(&n1 * &d2) + &(&n2 * &d1);
        let den = &d1 * &d2;
        assert!(gcd(&num, &den).is_one());
    }

    #[test]
    fn hidden_common_factor_in_dense_inputs() {
        let (h, t, e, a0) = (v(Sym::Hbar), v(Sym::T), v(Sym::E), v(Sym::Alpha(0)));
        let f = &(&(&h * &t) + &(&e * &e)) - &Poly::int(3);
        let p = &(&a0 * &a0) + &(&t * &h);
        let r = &(&e * &t) - &(&a0 * &h);
        let a = &(&f * &p) * &f;
        let b = &(&f * &r) * &p;
        assert_eq!(gcd(&a, &b), (&f * &p).monic());
    }

    #[test]
    fn gcd_of_squares() {
        let f = &(&v(Sym::Alpha(0)) * &v(Sym::T)) - &v(Sym::E);
        let g = &v(Sym::Hbar) + &Poly::int(2);
        let a = &(&f * &f) * &g;
        let b = &(&f * &g) * &(&v(Sym::T) + &Poly::one());
        assert_eq!(gcd(&a, &b), (&f * &g).monic());
    }
}
