//! Weight-2 modular symbols for `Γ₀(M)` over the rationals.

mod genus;
pub mod linalg;
mod p1;
mod space;

pub use genus::{cusp_count, elliptic_points_2, elliptic_points_3, genus};
pub use linalg::QMatrix;
pub use p1::{p1_list, P1List};
pub use space::{cuspidal_space, hecke_charpoly, heilbronn_merel, HeckeMatrix, ManinSpace};
