//! Parsing, structured output and verification suites for the `qpain` binary.

pub mod parse;
pub mod props;
pub mod structured;
pub mod suites;
