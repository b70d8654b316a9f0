//! Affine Weyl group actions as algebra morphisms with parameter actions.
//!
//! Words are written as usual and act rightmost letter first, so
//! `s1 p` applied to `a` is `s1(p(a))`.

mod checks;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ncalgebra::{Algebra, Element, Family, Fraction, NcError};
use crate::scalars::{Scalar, ScalarError, Sym, SymMap};

pub use checks::{check_commutes_with_flow, check_group_relations, check_preserves_relations, group_relations, relation_check};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("{letter} maps inverted f{gen} outside the shifted-power fragment")]
    NonInvertibleImage { letter: Letter, gen: u8 },
    #[error("letter {0} does not exist in this algebra")]
    LetterOutOfRange(Letter),
    #[error("cannot parse word at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Nc(#[from] NcError),
}

impl From<ScalarError> for WeylError {
    fn from(e: ScalarError) -> Self {
        WeylError::Nc(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S(u8),
    Pi,
    PiInv,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::Pi => f.write_str("p"),
            Letter::PiInv => f.write_str("p~"),
        }
    }
}

/// A word in the letters, written left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `o` as written, so `o` acts first.
    pub fn then(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }

    /// Group normal form `p^k w` with `w` freely reduced in the `s` letters.
    ///
    /// Uses `s_j p = p s_(j-1)`, `s_i s_i = 1` and `p^n = 1`, where `n` is
    /// the number of parameters; these are exactly the relations checked by
    /// [`checks::group_relations`].
    pub fn reduced(&self, alg: Algebra) -> Word {
        let n = i32::from(alg.nparams());
        let mut k = 0i32;
        let mut ss: Vec<i32> = Vec::new();
        for l in &self.0 {
            let step = match l {
                Letter::S(i) => {
                    let i = i32::from(*i);
                    if ss.last() == Some(&i) {
                        ss.pop();
                    } else {
                        ss.push(i);
                    }
                    continue;
                }
                Letter::Pi => 1,
                Letter::PiInv => -1,
            };
            k += step;
            for i in &mut ss {
                *i = (*i - step).rem_euclid(n);
            }
        }
        let pis = k.rem_euclid(n) as usize;
        Word(
            core::iter::repeat(Letter::Pi)
                .take(pis)
                .chain(ss.into_iter().map(|i| Letter::S(i as u8)))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::Pi => Letter::PiInv,
                    Letter::PiInv => Letter::Pi,
                    s => *s,
                })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WeylError;

    /// Letters `s0`..`s9`, `p`, `p~`; whitespace optional. `1` is the identity.
    fn from_str(src: &str) -> Result<Word, WeylError> {
        let bytes = src.as_bytes();
        let mut out = Vec::new();
        let mut k = 0;
        let err = |pos, msg: &str| WeylError::Parse { pos, msg: msg.into() };
        if src.trim() == "1" {
            return Ok(Word::identity());
        }
        while k < bytes.len() {
            match bytes[k] {
                b' ' | b'\t' | b'*' => k += 1,
                b's' => {
                    let d = bytes.get(k + 1).filter(|c| c.is_ascii_digit()).ok_or_else(|| err(k + 1, "expected index after s"))?;
                    out.push(Letter::S(d - b'0'));
                    k += 2;
                }
                b'p' if bytes.get(k + 1) == Some(&b'~') => {
                    out.push(Letter::PiInv);
                    k += 2;
                }
                b'p' => {
                    out.push(Letter::Pi);
                    k += 1;
                }
                _ => return Err(err(k, "expected s<i>, p or p~")),
            }
        }
        Ok(Word(out))
    }
}

/// Generator and parameter images of one algebra's letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BacklundTable {
    alg: Algebra,
}

/// `u_ij` of the cyclic family.
pub fn u_entry(alg: Algebra, i: u8, j: u8) -> i32 {
    let n = alg.ngens();
    if j == (i + 1) % n {
        1
    } else if i == (j + 1) % n {
        -1
    } else {
        0
    }
}

/// `a_ij` of the cyclic family (the affine Cartan matrix).
pub fn a_entry(alg: Algebra, i: u8, j: u8) -> i32 {
    let n = alg.ngens();
    if i == j {
        2
    } else if j == (i + 1) % n || i == (j + 1) % n {
        -1
    } else {
        0
    }
}

impl BacklundTable {
    pub fn new(alg: Algebra) -> BacklundTable {
        BacklundTable { alg }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    /// The reflections followed by `p`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.alg.nparams()).map(Letter::S).chain(core::iter::once(Letter::Pi))
    }

    fn check(&self, l: Letter) -> Result<(), WeylError> {
        match l {
            Letter::S(i) if i >= self.alg.nparams() => Err(WeylError::LetterOutOfRange(l)),
            _ => Ok(()),
        }
    }

    /// `p~` as the power of `p` that inverts it.
    fn expand(&self, l: Letter) -> impl Iterator<Item = Letter> {
        let n = match (l, self.alg.family()) {
            (Letter::PiInv, Family::Pii) => 1,
            (Letter::PiInv, Family::Al) => self.alg.rank() as usize,
            _ => 1,
        };
        let base = if l == Letter::PiInv { Letter::Pi } else { l };
        core::iter::repeat(base).take(n)
    }

    /// Image of `f_j` under a single letter (`p~` excluded); `None` if fixed.
    pub fn gen_image(&self, l: Letter, j: u8) -> Option<Element> {
        let alg = self.alg;
        let f = |i| Element::gen(alg, i);
        let inv = |i, n| Element::inv_power(alg, i, &Scalar::zero(), n).expect("in range");
        match (alg.family(), l) {
            (_, Letter::PiInv) => unreachable!("expanded before use"),
            (Family::Pii, Letter::Pi) => Some(match j {
                0 => f(1),
                1 => f(0),
                _ => -&f(2),
            }),
            (Family::Pii, Letter::S(i)) => {
                let o = 1 - i;
                let a = Scalar::alpha(i);
                let sign = if i == 0 { Scalar::int(1) } else { Scalar::int(-1) };
                match j {
                    j if j == i => None,
                    2 => Some(&f(2) + &inv(i, -1).scale(&(&sign * &a))),
                    _ => {
                        // f_o -+ (f2 a f_i^{-1} + a f_i^{-1} f2) - a^2 f_i^{-2}
                        let mid = &f(2).mul(&inv(i, -1)).expect("one inverse") + &inv(i, -1).mul(&f(2)).expect("one inverse");
                        let tail = inv(i, -2).scale(&(&a * &a));
                        Some(&(&f(o) - &mid.scale(&(&sign * &a))) - &tail)
                    }
                }
            }
            (Family::Al, Letter::Pi) => Some(f((j + 1) % alg.ngens())),
            (Family::Al, Letter::S(i)) => match u_entry(alg, i, j) {
                0 => None,
                u => Some(&f(j) + &inv(i, -1).scale(&(&Scalar::alpha(i) * &Scalar::int(u as i64)))),
            },
        }
    }

    /// Image of `alpha_j` under a single letter (`p~` excluded).
    pub fn param_image(&self, l: Letter, j: u8) -> Scalar {
        let alg = self.alg;
        let a = Scalar::alpha;
        match (alg.family(), l) {
            (_, Letter::PiInv) => unreachable!("expanded before use"),
            (Family::Pii, Letter::Pi) => a(1 - j),
            (Family::Pii, Letter::S(i)) if i == j => -a(i),
            (Family::Pii, Letter::S(i)) => &a(j) + &(&a(i) * &Scalar::int(2)),
            (Family::Al, Letter::Pi) => a((j + 1) % alg.nparams()),
            (Family::Al, Letter::S(i)) => &a(j) - &(&a(i) * &Scalar::int(a_entry(alg, i, j) as i64)),
        }
    }

    fn param_map(&self, l: Letter) -> SymMap {
        (0..self.alg.nparams()).map(|j| (Sym::Alpha(j), self.param_image(l, j))).collect()
    }

    fn apply_letter(&self, l: Letter, a: &Element) -> Result<Element, WeylError> {
        let map = self.param_map(l);
        let images: Vec<Option<Element>> = self.alg.gens().map(|j| self.gen_image(l, j)).collect();
        a.subst_scalars(&map)?
            .substitute(&|j| images[j as usize].clone())
            .map_err(|e| match e {
                NcError::InverseObstruction(gen) => WeylError::NonInvertibleImage { letter: l, gen },
                e => e.into(),
            })
    }

    /// Applies the word to an element, rightmost letter first.
    pub fn apply(&self, w: &Word, a: &Element) -> Result<Element, WeylError> {
        if a.algebra() != self.alg {
            return Err(NcError::AlgebraMismatch.into());
        }
        let mut out = a.clone();
        for &l in w.letters().iter().rev() {
            self.check(l)?;
            for m in self.expand(l) {
                out = self.apply_letter(m, &out)?;
            }
        }
        Ok(out)
    }

    /// The same action on right fractions; never refuses an inverse.
    pub fn apply_fraction(&self, w: &Word, a: &Fraction) -> Result<Fraction, WeylError> {
        let mut out = a.clone();
        for &l in w.letters().iter().rev() {
            self.check(l)?;
            for m in self.expand(l) {
                out = out.map(&|e| self.apply_letter(m, e).map_err(|err| match err {
                    WeylError::Nc(n) => n,
                    _ => NcError::NotInvertible,
                }))?;
            }
        }
        Ok(out)
    }

    /// The induced action on parameters, rightmost letter first.
    pub fn params(&self, w: &Word, a: &Scalar) -> Result<Scalar, WeylError> {
        let mut out = a.clone();
        for &l in w.letters().iter().rev() {
            self.check(l)?;
            for m in self.expand(l) {
                out = out.subst(&self.param_map(m))?;
            }
        }
        Ok(out)
    }
}

/// Applies `w` to `a`; see [`BacklundTable::apply`].
pub fn apply_transform(w: &Word, a: &Element) -> Result<Element, WeylError> {
    BacklundTable::new(a.algebra()).apply(w, a)
}

/// The parameter action of `w`, optionally followed by `alpha_0 -> 1 - ...`.
pub fn transform_params(alg: Algebra, w: &Word, a: &Scalar, normalize: bool) -> Result<Scalar, WeylError> {
    let out = BacklundTable::new(alg).params(w, a)?;
    if normalize {
        Ok(out.subst(&crate::dynamics::normalize_k(alg))?)
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints_words() {
        assert_eq!(w("s1p").to_string(), "s1 p");
        assert_eq!(w("p~ s0 s1").letters(), &[Letter::PiInv, Letter::S(0), Letter::S(1)]);
        assert!(w("1").is_identity());
        assert!("s".parse::<Word>().is_err());
        assert!("q".parse::<Word>().is_err());
        assert_eq!(w("s1 p~").inverse(), w("p s1"));
    }

    #[test]
    fn pii_up_shift_of_f2() {
        let alg = Algebra::pii();
        let img = apply_transform(&w("s1 p"), &Element::gen(alg, 2)).unwrap();
        assert_eq!(img.to_string(), "-f2 + a1*inv(f1)");
        assert_eq!(apply_transform(&w("p s1"), &Element::gen(alg, 1)).unwrap(), Element::gen(alg, 0));
    }

    #[test]
    fn refuses_non_affine_inverse_images() {
        let alg = Algebra::al(2).unwrap();
        let inv0 = Element::inv_power(alg, 0, &Scalar::zero(), -1).unwrap();
        assert_eq!(
            apply_transform(&w("s1"), &inv0),
            Err(WeylError::NonInvertibleImage { letter: Letter::S(1), gen: 0 })
        );
    }

    #[test]
    fn parameter_shifts() {
        let pii = Algebra::pii();
        let one = Scalar::one();
        assert_eq!(transform_params(pii, &w("s1 p"), &Scalar::alpha(1), true).unwrap(), &Scalar::alpha(1) + &one);
        let al2 = Algebra::al(2).unwrap();
        assert_eq!(transform_params(al2, &w("s1 s0 p"), &Scalar::alpha(1), true).unwrap(), &Scalar::alpha(1) + &one);
        let al3 = Algebra::al(3).unwrap();
        assert_eq!(transform_params(al3, &w("p s3 s2 s1"), &Scalar::alpha(2), false).unwrap(), Scalar::alpha(2));
    }

    #[test]
    fn inverse_rotation_is_a_power() {
        let alg = Algebra::al(4).unwrap();
        let f3 = Element::gen(alg, 3);
        assert_eq!(apply_transform(&w("p~"), &f3).unwrap(), Element::gen(alg, 2));
        assert_eq!(apply_transform(&w("p").pow(5), &f3).unwrap(), f3);
    }

    #[test]
    fn reduced_words() {
        let al3 = Algebra::al(3).unwrap();
        assert_eq!(w("s3 p~ p s3 s2 s1").reduced(al3), w("s2 s1"));
        assert_eq!(w("s1 p").reduced(al3), w("p s0"));
        assert_eq!(w("p~").reduced(al3), w("p p p"));
        assert_eq!(w("s1 p p s1").reduced(Algebra::pii()), w("1"));
        // Same action as the unreduced word wherever both are defined.
        let f = Element::gen(al3, 1);
        let v = w("p s1 p~ s3 s3");
        assert_eq!(v.reduced(al3), w("s2"));
        assert_eq!(apply_transform(&v, &f).unwrap(), apply_transform(&v.reduced(al3), &f).unwrap());
    }

    #[test]
    fn out_of_range_letter() {
        let alg = Algebra::al(2).unwrap();
        assert!(matches!(
            apply_transform(&w("s3"), &Element::gen(alg, 0)),
            Err(WeylError::LetterOutOfRange(Letter::S(3)))
        ));
    }
}
