//! Supersingular isogeny graphs with `Γ₀(N)`-level structure, their Brandt
//! matrices and Ihara zeta functions, and an independent modular-symbols
//! computation of Hasse–Weil zeta functions of `X₀(M)`, compared exactly
//! over the integers.

pub mod arith;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod graph;
pub mod modsym;
pub mod verify;

pub use error::{Error, Result};
