use core::fmt;

/// Largest number of parameter symbols `a0..a9` (algebras up to `AL(9)`).
pub const MAX_ALPHA: u8 = 10;

/// Internal central symbols reserved for the fraction decider.
pub const MAX_CENTER: u8 = 4;

/// Number of distinct symbols; the width of an exponent vector.
pub const NSYM: usize = 3 + MAX_ALPHA as usize + 2 + MAX_CENTER as usize + 1;

/// A commuting symbol of the coefficient field.
///
/// The derived order is the canonical print order:
/// `Hbar < T < E < Alpha(0) < .. < Alpha(9) < X < Y`, followed by the
/// internal symbols used only inside zero tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Hbar,
    T,
    /// `e^{t/2}`; differentiates to half itself.
    E,
    Alpha(u8),
    X,
    Y,
    /// Stand-in for a central element of an algebra; never printed by user paths.
    Center(u8),
    /// The commuting variable of an Ore coefficient field.
    Ore,
}

impl Sym {
    pub fn index(self) -> usize {
        match self {
            Sym::Hbar => 0,
            Sym::T => 1,
            Sym::E => 2,
            Sym::Alpha(i) => {
                assert!(i < MAX_ALPHA, "parameter index {i} out of range");
                3 + i as usize
            }
            Sym::X => 3 + MAX_ALPHA as usize,
            Sym::Y => 4 + MAX_ALPHA as usize,
            Sym::Center(i) => {
                assert!(i < MAX_CENTER, "center index {i} out of range");
                5 + MAX_ALPHA as usize + i as usize
            }
            Sym::Ore => NSYM - 1,
        }
    }

    pub fn from_index(i: usize) -> Sym {
        let a = MAX_ALPHA as usize;
        match i {
            0 => Sym::Hbar,
            1 => Sym::T,
            2 => Sym::E,
            _ if i < 3 + a => Sym::Alpha((i - 3) as u8),
            _ if i == 3 + a => Sym::X,
            _ if i == 4 + a => Sym::Y,
            _ if i < NSYM - 1 => Sym::Center((i - 5 - a) as u8),
            _ if i == NSYM - 1 => Sym::Ore,
            _ => panic!("symbol index {i} out of range"),
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Hbar => f.write_str("hbar"),
            Sym::T => f.write_str("t"),
            Sym::E => f.write_str("E"),
            Sym::Alpha(i) => write!(f, "a{i}"),
            Sym::X => f.write_str("x"),
            Sym::Y => f.write_str("y"),
            Sym::Center(i) => write!(f, "c{i}"),
            Sym::Ore => f.write_str("z"),
        }
    }
}
