#![cfg_attr(not(any(feature = "std", test)), no_std)]
extern crate alloc;

pub mod scalars;
pub mod ncalgebra;
pub mod dynamics;
pub mod report;
pub mod weyl;
pub mod contiguity;
