//! Exact coefficient field: rational functions in `hbar, t, E, a0.., x, y`.

mod gcd;
mod poly;
mod scalar;
mod sym;

pub use gcd::gcd;
pub use poly::{Exps, Poly, Rat};
pub use scalar::{Scalar, ScalarError, SymMap};
pub use sym::{Sym, MAX_ALPHA, MAX_CENTER, NSYM};

