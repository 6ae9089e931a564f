//! Exact filtered Floer-type persistence computations.

// Error variants carry exact rationals for diagnostics; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod battery;
pub mod comb_floer;
pub mod filtered_complex;
pub mod novikov;
pub mod persistence;
pub mod radial;
pub mod seidel;
