//! Elliptic curves over the finite-field tower: group law, supersingularity,
//! division polynomials, cyclic subgroups, isogenies and isomorphisms.

pub mod curve;
pub mod division;
pub mod iso;
pub mod subgroups;
pub mod supersingular;
pub mod velu;

pub use curve::{curve_from_j, CurvePoint, EllipticCurve};
pub use division::division_polynomial;
pub use iso::{isomorphism_match, isomorphism_scale, transport_kernel};
pub use subgroups::{cyclic_subgroups, psi, subgroup_from_generator, torsion_points, SubgroupKernel};
pub use supersingular::{deuring_polynomial, is_supersingular, supersingular_j_invariants};
pub use velu::{velu, Isogeny};
