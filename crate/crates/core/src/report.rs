//! Check results shared by every verification routine.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::ncalgebra::{Element, Fraction};
use crate::scalars::Scalar;

/// What a check is supposed to find.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// The residual must vanish.
    Zero,
    /// A negative control: the residual must not vanish.
    Nonzero,
    /// Recorded for context; never fails.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Element(Element),
    Scalar(Scalar),
    /// A right fraction, for identities outside the shifted-power fragment.
    Fraction(Fraction),
    /// The computation itself failed (e.g. left the invertible fragment).
    Error(String),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Element(e) => e.is_zero(),
            Residual::Scalar(s) => s.is_zero(),
            Residual::Fraction(q) => q.is_zero(),
            Residual::Error(_) => false,
        }
    }

    pub fn from_result<E: fmt::Display>(r: Result<Element, E>) -> Residual {
        match r {
            Ok(e) => Residual::Element(e),
            Err(e) => Residual::Error(e.to_string()),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Element(e) => write!(f, "{e}"),
            Residual::Scalar(s) => write!(f, "{s}"),
            Residual::Fraction(q) => write!(f, "{q}"),
            Residual::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expect: Expect,
    pub residual: Residual,
    /// Extra context, e.g. the specialization at which a residual vanishes.
    pub note: Option<String>,
}

impl Check {
    pub fn zero(label: impl Into<String>, residual: Residual) -> Check {
        Check {
            label: label.into(),
            expect: Expect::Zero,
            residual,
            note: None,
        }
    }

    pub fn control(label: impl Into<String>, residual: Residual) -> Check {
        Check {
            expect: Expect::Nonzero,
            ..Check::zero(label, residual)
        }
    }

    pub fn info(label: impl Into<String>, residual: Residual) -> Check {
        Check {
            expect: Expect::Info,
            ..Check::zero(label, residual)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::Zero => self.residual.is_zero(),
            Expect::Nonzero => !self.residual.is_zero() && !matches!(self.residual, Residual::Error(_)),
            Expect::Info => true,
        }
    }

    /// One of `PASS`, `FAIL`, `EXPECTED-FAIL` (a control that fired) or `INFO`.
    pub fn status(&self) -> &'static str {
        match (self.expect, self.passed()) {
            (Expect::Info, _) => "INFO",
            (Expect::Nonzero, true) => "EXPECTED-FAIL",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Checks that exclude negative controls and informational entries.
    pub fn without_controls(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.expect == Expect::Zero)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for c in &self.checks {
            write!(f, "{:<13} {}", c.status(), c.label)?;
            if !c.passed() || c.expect != Expect::Zero {
                write!(f, " :: residual {}", c.residual)?;
            }
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
