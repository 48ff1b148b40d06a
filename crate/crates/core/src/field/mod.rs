//! Finite fields: `F_q`, a compatible tower `F_{q^k}`, polynomials over its
//! levels, and root finding.

pub mod poly;
pub mod prime;
pub mod roots;
pub mod tower;

pub use poly::FieldPoly;
pub use roots::{distinct_roots, roots};
pub use tower::{Embedding, ExtField, FieldElement, FieldTower};
