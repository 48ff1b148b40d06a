//! Exact integer, polynomial, and rational-function arithmetic.

pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod sturm;

pub use matrix::{bass_determinant, berkowitz, charpoly, IntMatrix};
pub use num_bigint::BigInt;
pub use poly::{poly_exact_div, Degree, IntPolynomial};
pub use ratfun::{rf_div, rf_eq, rf_mul, RationalFunction};
