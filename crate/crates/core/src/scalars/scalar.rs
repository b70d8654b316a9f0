//! Canonical rational functions over Q.
//!
//! A [`Scalar`] is `num / den` with:
//!   1. `gcd(num, den) = 1`
//!   2. `den` monic under the graded order (leading coefficient 1)
//!   3. zero is `0 / 1`
//!
//! so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Rat};
use super::sym::Sym;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// A simultaneous substitution of symbols.
pub type SymMap = BTreeMap<Sym, Scalar>;

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_poly(Poly::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(Poly::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(Poly::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::from_rat(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rat(c: Rat) -> Scalar {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn sym(s: Sym) -> Scalar {
        Scalar::from_poly(Poly::var(s))
    }

    pub fn hbar() -> Scalar {
        Scalar::sym(Sym::Hbar)
    }

    pub fn alpha(i: u8) -> Scalar {
        Scalar::sym(Sym::Alpha(i))
    }

    pub fn from_poly(num: Poly) -> Scalar {
        Scalar {
            num,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(Scalar::from_poly(num.scale(&c.recip())));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            Ok(Scalar { num, den })
        } else {
            let r = lc.recip();
            Ok(Scalar {
                num: num.scale(&r),
                den: den.scale(&r),
            })
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when no symbol occurs.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.num.is_zero() {
            return Some(Rat::zero());
        }
        match (self.num.constant_value(), self.den.is_one()) {
            (Some(c), true) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    /// Sign convention used by printers: true if the numerator leads negative.
    pub fn is_negative(&self) -> bool {
        self.num.leading_is_negative()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Scalar::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Rat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, n: i32) -> Result<Scalar, ScalarError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs();
        Ok(Scalar {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn partial(&self, s: Sym) -> Scalar {
        if self.den.is_one() {
            return Scalar::from_poly(self.num.partial(s));
        }
        let n = &(&self.num.partial(s) * &self.den) - &(&self.num * &self.den.partial(s));
        Scalar::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// The time derivation: `d t = 1`, `d E = E/2`, every other symbol constant.
    pub fn d_t(&self) -> Scalar {
        let dt = self.partial(Sym::T);
        let de = self.partial(Sym::E);
        if de.is_zero() {
            return dt;
        }
        &dt + &(&de * &Scalar::sym(Sym::E)).scale(&Rat::new(BigInt::from(1), BigInt::from(2)))
    }

    /// Simultaneous substitution.
    pub fn subst(&self, map: &SymMap) -> Result<Scalar, ScalarError> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        if map.values().all(Scalar::is_poly) {
            let f = |s: Sym| map.get(&s).map(|v| v.num.clone());
            let n = self.num.subst_poly(&f);
            let d = self.den.subst_poly(&f);
            return Scalar::new(n, d);
        }
        let n = eval(&self.num, map);
        let d = eval(&self.den, map);
        n.checked_div(&d)
    }
}

fn eval(p: &Poly, map: &SymMap) -> Scalar {
    let mut acc = Scalar::zero();
    for (e, c) in p.terms_desc() {
        let mut t = Scalar::from_rat(c.clone());
        for (s, k) in e.symbols() {
            let base = map.get(&s).cloned().unwrap_or_else(|| Scalar::sym(s));
            t = &t * &base.powi(k as i32).expect("positive power");
        }
        acc = &acc + &t;
    }
    acc
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Scalar {
        Scalar::from_poly(p)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<Sym> for Scalar {
    fn from(s: Sym) -> Scalar {
        Scalar::sym(s)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Scalar::from_poly(&self.num + &o.num);
            }
            return Scalar::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        if o.den.is_one() {
            return Scalar {
                num: &self.num + &(&o.num * &self.den),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return Scalar {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&o.num * &a);
        if num.is_zero() {
            return Scalar::zero();
        }
        // Both sides are reduced, so any common factor of the sum divides g.
        let den = &self.den * &b;
        if g.is_one() {
            return Scalar { num, den };
        }
        let c = gcd(&num, &g);
        if c.is_one() {
            return Scalar { num, den };
        }
        Scalar {
            num: num.div_exact(&c).expect("gcd divides"),
            den: den.div_exact(&c).expect("gcd divides"),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_poly(&self.num * &o.num);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let r = lc.recip();
            Scalar {
                num: num.scale(&r),
                den: den.scale(&r),
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let single_symbol = self.den.len() == 1
            && self
                .den
                .leading()
                .is_some_and(|(e, _)| e.degree() == 1);
        if single_symbol {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
