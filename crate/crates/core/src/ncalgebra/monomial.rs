use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::univariate::Pw;
use crate::scalars::Scalar;

/// One generator power inside a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gen: u8,
    pub pw: Pw,
}

impl Factor {
    fn key(&self) -> (u8, core::cmp::Reverse<i32>, &Scalar) {
        (self.gen, core::cmp::Reverse(self.pw.pow), &self.pw.shift)
    }
}

impl Ord for Factor {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Ordered product of factors with strictly ascending generators.
///
/// Sorted for printing: total degree descending, then factor by factor.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Monomial(pub(crate) Vec<Factor>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    /// Caller guarantees canonical factors with ascending generators.
    pub(crate) fn from_factors(fs: Vec<Factor>) -> Monomial {
        Monomial(fs)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|f| f.pw.pow).sum()
    }

    pub fn power_of(&self, gen: u8) -> Option<&Pw> {
        self.0.iter().find(|f| f.gen == gen).map(|f| &f.pw)
    }

    pub fn has_inverse(&self) -> bool {
        self.0.iter().any(|f| f.pw.pow < 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree()
            .cmp(&self.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Writes `f - c` with the sign of `c` folded in.
pub(crate) fn fmt_shifted_base(gen: u8, c: &Scalar, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "f{gen}")?;
    let (op, mag) = if c.is_negative() { ("+", -c) } else { ("-", c.clone()) };
    if mag.num().len() > 1 && mag.den().is_one() {
        write!(f, " {op} ({mag})")
    } else {
        write!(f, " {op} {mag}")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.pw.pow;
        if n > 0 {
            write!(f, "f{}", self.gen)?;
            if n > 1 {
                write!(f, "^{n}")?;
            }
            return Ok(());
        }
        f.write_str("inv(")?;
        if self.pw.shift.is_zero() {
            write!(f, "f{}", self.gen)?;
        } else {
            fmt_shifted_base(self.gen, &self.pw.shift, f)?;
        }
        f.write_str(")")?;
        if n < -1 {
            write!(f, "^{}", -n)?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
