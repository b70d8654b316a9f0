//! Normal ordering for the two quantum Painlevé algebra families.
//!
//! Elements are sums of ordered monomials with generators ascending by
//! index. Each generator appears at most once per monomial, either as a
//! plain power `f^n` (any sign) or as a negative shifted power
//! `(f - c)^{-n}`; products of same-generator factors are reduced by
//! partial fractions.

mod element;
pub mod fraction;
mod monomial;
pub mod univariate;

use core::fmt;

use crate::scalars::{Scalar, ScalarError};

pub use element::{partial_fraction_merge, substitution_is_consistent, Element};
pub use monomial::{Factor, Monomial};
pub use fraction::Fraction;
pub use univariate::Pw;

/// Largest supported rank of the cyclic family.
pub const MAX_RANK: u8 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Three generators with `[f1, f0] = 2 hbar f2`.
    Pii,
    /// `l + 1` generators on a cycle, `[f_i, f_{i+1}] = hbar`.
    Al,
}

/// An algebra presentation; small and `Copy` so every element can carry it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Algebra {
    family: Family,
    rank: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NcError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("generator f{0} is out of range")]
    GeneratorOutOfRange(u8),
    #[error("zero power requested; use the unit")]
    ZeroPower,
    #[error("two factors carry the same shift")]
    ShiftCollision,
    #[error("cannot substitute for f{0}: it appears inverted")]
    InverseObstruction(u8),
    #[error("product of inverses of non-commuting generators f{0}, f{1} has no finite normal form")]
    UnorderableInverses(u8, u8),
    #[error("element is not invertible in the shifted-power fragment")]
    NotInvertible,
    #[error("no common right multiple up to degree {0}")]
    NoCommonMultiple(u32),
    #[error("common right multiple search exceeded its coefficient budget")]
    SearchBudget,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Value of `[f_j, f_i]` for a pair out of normal order (`j > i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Bracket {
    Commute,
    Central(Scalar),
    /// `[f1, f0] = 2 hbar f2`.
    Quadratic,
}

impl Algebra {
    pub fn pii() -> Algebra {
        Algebra {
            family: Family::Pii,
            rank: 1,
        }
    }

    /// The cyclic algebra with `l + 1` generators, `2 <= l <= 9`.
    pub fn al(l: u8) -> Option<Algebra> {
        (2..=MAX_RANK).contains(&l).then_some(Algebra {
            family: Family::Al,
            rank: l,
        })
    }

    pub fn family(self) -> Family {
        self.family
    }

    /// The affine rank `l`: parameters and reflections are indexed `0..=l`.
    pub fn rank(self) -> u8 {
        self.rank
    }

    pub fn ngens(self) -> u8 {
        match self.family {
            Family::Pii => 3,
            Family::Al => self.rank + 1,
        }
    }

    pub fn nparams(self) -> u8 {
        self.rank + 1
    }

    pub fn gens(self) -> impl Iterator<Item = u8> {
        0..self.ngens()
    }

    pub(crate) fn check_gen(self, i: u8) -> Result<(), NcError> {
        if i < self.ngens() {
            Ok(())
        } else {
            Err(NcError::GeneratorOutOfRange(i))
        }
    }

    /// Only meaningful for `j > i`.
    pub(crate) fn bracket(self, j: u8, i: u8) -> Bracket {
        debug_assert!(j > i);
        let h = Scalar::hbar();
        match self.family {
            Family::Pii => match (j, i) {
                (1, 0) => Bracket::Quadratic,
                (2, 0) => Bracket::Central(-h),
                (2, 1) => Bracket::Central(h),
                _ => Bracket::Commute,
            },
            Family::Al => {
                let n = self.ngens();
                if (j + 1) % n == i {
                    Bracket::Central(h)
                } else if (i + 1) % n == j {
                    Bracket::Central(-h)
                } else {
                    Bracket::Commute
                }
            }
        }
    }

    /// The defining commutator `[f_i, f_j]` as an element.
    pub fn defining_commutator(self, i: u8, j: u8) -> Element {
        if i == j {
            return Element::zero(self);
        }
        if i < j {
            return -&self.defining_commutator(j, i);
        }
        match self.bracket(i, j) {
            Bracket::Commute => Element::zero(self),
            Bracket::Central(c) => Element::scalar(self, c),
            Bracket::Quadratic => Element::gen(self, 2).scale(&(Scalar::int(2) * Scalar::hbar())),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Pii => f.write_str("pii"),
            Family::Al => write!(f, "al:{}", self.rank),
        }
    }
}
