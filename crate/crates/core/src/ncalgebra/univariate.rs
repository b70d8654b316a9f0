//! Rational functions of a single generator.
//!
//! Powers of one generator commute with each other, so products of
//! `(f - c)^n` factors reduce by ordinary partial fractions. A canonical
//! single-generator value is a polynomial in `f` plus, for each distinct
//! nonzero-or-zero shift `c`, a principal part in `(f - c)^{-1}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalars::Scalar;

/// `(f - shift)^pow` for an implicit generator `f`.
///
/// Canonical when `pow > 0` implies `shift == 0` and `pow == 0` means the
/// unit (with `shift == 0`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pw {
    pub shift: Scalar,
    pub pow: i32,
}

/// A formal sum of powers; duplicates are allowed and summed by callers.
pub type PwSum = Vec<(Pw, Scalar)>;

impl Pw {
    pub fn unit() -> Pw {
        Pw {
            shift: Scalar::zero(),
            pow: 0,
        }
    }

    pub fn plain(pow: i32) -> Pw {
        Pw {
            shift: Scalar::zero(),
            pow,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.pow == 0
    }

    /// `(f - c)^n` for any integer `n`, expanded into canonical pieces.
    pub fn shifted(c: &Scalar, n: i32) -> PwSum {
        if n == 0 {
            return vec![(Pw::unit(), Scalar::one())];
        }
        if n > 0 && !c.is_zero() {
            return expand_positive(c, n as u32);
        }
        vec![(
            Pw {
                shift: c.clone(),
                pow: n,
            },
            Scalar::one(),
        )]
    }
}

fn binomial(n: u32, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = &acc * &Scalar::ratio(i64::from(n - i), i64::from(i + 1));
    }
    acc
}

/// `(f - c)^m = sum_j C(m, j) (-c)^(m-j) f^j`.
fn expand_positive(c: &Scalar, m: u32) -> PwSum {
    let neg = -c;
    (0..=m)
        .filter_map(|j| {
            let coef = &binomial(m, j) * &neg.powi((m - j) as i32).expect("nonnegative power");
            (!coef.is_zero()).then(|| (Pw::plain(j as i32), coef))
        })
        .collect()
}

fn scaled(sum: PwSum, s: &Scalar) -> impl Iterator<Item = (Pw, Scalar)> + '_ {
    sum.into_iter().map(move |(p, c)| (p, &c * s))
}

/// Product of two canonical powers of the same generator.
pub fn mul(a: &Pw, b: &Pw) -> PwSum {
    if a.is_unit() {
        return vec![(b.clone(), Scalar::one())];
    }
    if b.is_unit() {
        return vec![(a.clone(), Scalar::one())];
    }
    if a.shift == b.shift {
        return Pw::shifted(&a.shift, a.pow + b.pow);
    }
    match (a.pow > 0, b.pow > 0) {
        (true, false) => poly_times_pole(a.pow as u32, &b.shift, -b.pow as u32),
        (false, true) => poly_times_pole(b.pow as u32, &a.shift, -a.pow as u32),
        (false, false) => two_poles(&a.shift, -a.pow as u32, &b.shift, -b.pow as u32),
        (true, true) => unreachable!("positive powers carry no shift"),
    }
}

/// `f^k (f - c)^{-n}` with `c != 0`, rewriting `f = (f - c) + c`.
fn poly_times_pole(k: u32, c: &Scalar, n: u32) -> PwSum {
    let mut out = PwSum::new();
    for j in 0..=k {
        let coef = &binomial(k, j) * &c.powi((k - j) as i32).expect("nonnegative power");
        out.extend(scaled(Pw::shifted(c, j as i32 - n as i32), &coef));
    }
    out
}

/// `(f - a)^{-m} (f - b)^{-n}` with `a != b`.
fn two_poles(a: &Scalar, m: u32, b: &Scalar, n: u32) -> PwSum {
    if m == 0 {
        return Pw::shifted(b, -(n as i32));
    }
    if n == 0 {
        return Pw::shifted(a, -(m as i32));
    }
    let r = (a - b).inv().expect("distinct shifts");
    let mut out: PwSum = scaled(two_poles(a, m, b, n - 1), &r).collect();
    out.extend(scaled(two_poles(a, m - 1, b, n), &-&r));
    out
}

/// `d/df (f - c)^n`.
pub fn derivative(p: &Pw) -> PwSum {
    if p.is_unit() {
        return PwSum::new();
    }
    let n = Scalar::int(i64::from(p.pow));
    scaled(Pw::shifted(&p.shift, p.pow - 1), &n).collect()
}

/// Applies `derivative` to every entry of a sum.
pub fn derivative_sum(s: &PwSum) -> PwSum {
    s.iter()
        .flat_map(|(p, c)| scaled(derivative(p), c).collect::<Vec<_>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Sym;
    use alloc::collections::BTreeMap;

    fn collect(s: PwSum) -> BTreeMap<Pw, Scalar> {
        let mut m: BTreeMap<Pw, Scalar> = BTreeMap::new();
        for (p, c) in s {
            let e = m.entry(p).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
        m.retain(|_, c| !c.is_zero());
        m
    }

    #[test]
    fn opposite_powers_cancel() {
        let c = Scalar::sym(Sym::X);
        for n in 1..4 {
            let a = Pw { shift: c.clone(), pow: -n };
            let expanded = Pw::shifted(&c, n);
            let mut total = PwSum::new();
            for (p, s) in expanded {
                total.extend(scaled(mul(&a, &p), &s));
            }
            let m = collect(total);
            assert_eq!(m.len(), 1);
            assert_eq!(m.get(&Pw::unit()), Some(&Scalar::one()));
        }
    }

    #[test]
    fn two_simple_poles() {
        let c = Scalar::sym(Sym::T);
        let m = collect(mul(&Pw::plain(-1), &Pw { shift: c.clone(), pow: -1 }));
        let r = c.inv().unwrap();
        assert_eq!(m.get(&Pw { shift: c, pow: -1 }), Some(&r));
        assert_eq!(m.get(&Pw::plain(-1)), Some(&-&r));
    }

    #[test]
    fn polynomial_over_shift_divides_out() {
        // f^2 / (f - c) = f + c + c^2 / (f - c)
        let c = Scalar::sym(Sym::Y);
        let m = collect(mul(&Pw::plain(2), &Pw { shift: c.clone(), pow: -1 }));
        assert_eq!(m.get(&Pw::plain(1)), Some(&Scalar::one()));
        assert_eq!(m.get(&Pw::unit()), Some(&c));
        assert_eq!(m.get(&Pw { shift: c.clone(), pow: -1 }), Some(&(&c * &c)));
    }
}
