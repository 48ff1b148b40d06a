//! Supersingular isogeny graphs with `Γ₀(N)`-level structure.

mod brandt;
mod export;
mod zeta;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix;
use crate::elliptic::{curve_from_j, cyclic_subgroups, psi, supersingular_j_invariants};
use crate::elliptic::{EllipticCurve, SubgroupKernel};
use crate::error::{Error, Result};
use crate::field::{prime, FieldElement, FieldPoly, FieldTower};

pub use brandt::brandt_matrix;
pub use export::{export_graph, ExportFormat, GraphDocument};
pub use zeta::{ihara_zeta, IharaZeta};

/// Canonical identity of a vertex: the j-invariant and the monic kernel
/// polynomial of the level structure on the canonical model, both over
/// `F_{q^2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexKey {
    pub j: FieldElement,
    pub kernel: FieldPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub index: usize,
    pub curve: EllipticCurve,
    pub level_structure: SubgroupKernel,
    pub key: VertexKey,
}

/// Parameters and field data needed to reproduce a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub q: u64,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub seed: u64,
    pub defining_polynomials: BTreeMap<u32, Vec<u64>>,
}

/// The graph `X_p^q(N)`: its vertices and the Brandt matrix `B_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelGraph {
    pub q: u64,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub vertices: Vec<Vertex>,
    pub brandt: IntMatrix,
}

/// Checks `q ≡ 1 (mod 12)`, `q` prime and `gcd(N, q) = 1`.
pub fn check_level(q: u64, n: u64) -> Result<()> {
    if !prime::is_prime(q) || q % 12 != 1 {
        return Err(Error::Precondition("q must be prime ≡ 1 (mod 12)".into()));
    }
    if n == 0 || n.is_multiple_of(q) {
        return Err(Error::Precondition(format!("N = {n} must be positive and prime to q")));
    }
    Ok(())
}

/// Every pair `(E, C)` with `E` the canonical model of a supersingular
/// j-invariant and `C` cyclic of order `N`, ordered by key.
pub fn build_vertices(tower: &FieldTower, n: u64) -> Result<Vec<Vertex>> {
    let q = tower.characteristic();
    check_level(q, n)?;
    let f = tower.level(2);
    let mut out = Vec::new();
    for j in supersingular_j_invariants(tower)? {
        let curve = curve_from_j(&f, &j)?;
        for c in cyclic_subgroups(tower, &curve, n)? {
            if c.kernel_poly.level() != 2 {
                return Err(Error::Internal(format!(
                    "subgroup of order {n} on j = {j} is not defined over F_q^2"
                )));
            }
            out.push(Vertex {
                index: 0,
                key: VertexKey { j: j.clone(), kernel: c.kernel_poly.clone() },
                curve: curve.clone(),
                level_structure: c,
            });
        }
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    for (i, v) in out.iter_mut().enumerate() {
        v.index = i;
    }
    let expected = (q - 1) / 12 * psi(n);
    if out.len() as u64 != expected {
        return Err(Error::Internal(format!("{} vertices, expected {expected}", out.len())));
    }
    Ok(out)
}

impl LevelGraph {
    /// Builds `X_p^q(N)` over `tower`.
    pub fn build(tower: &FieldTower, p: u64, n: u64) -> Result<LevelGraph> {
        let vertices = build_vertices(tower, n)?;
        Self::from_vertices(tower, p, n, vertices)
    }

    /// Builds the graph on a precomputed vertex list.
    pub fn from_vertices(tower: &FieldTower, p: u64, n: u64, vertices: Vec<Vertex>) -> Result<LevelGraph> {
        let brandt = brandt_matrix(tower, &vertices, p)?;
        Ok(LevelGraph {
            q: tower.characteristic(),
            p,
            n,
            vertices,
            brandt,
        })
    }

    /// `2χ = 2|V| - Σ b_ij`.
    pub fn euler_char_times_2(&self) -> i64 {
        let total: i64 = self.brandt.total().try_into().expect("small matrix");
        2 * self.vertices.len() as i64 - total
    }

    pub fn manifest(&self, tower: &FieldTower) -> Manifest {
        Manifest {
            q: self.q,
            p: self.p,
            n: self.n,
            seed: tower.seed(),
            defining_polynomials: tower.defining_polynomials(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        for (q, n, want) in [(13, 1, 1), (13, 2, 3), (37, 1, 3), (13, 5, 6), (37, 3, 12)] {
            let tower = FieldTower::new(q, 0).unwrap();
            let vs = build_vertices(&tower, n).unwrap();
            assert_eq!(vs.len(), want);
            for (i, v) in vs.iter().enumerate() {
                assert_eq!(v.index, i);
            }
            let mut keys: Vec<_> = vs.iter().map(|v| v.key.clone()).collect();
            keys.dedup();
            assert_eq!(keys.len(), want);
        }
    }

    #[test]
    fn level_validation() {
        let tower = FieldTower::new(13, 0).unwrap();
        assert!(matches!(build_vertices(&tower, 13), Err(Error::Precondition(_))));
        let tower = FieldTower::new(11, 0).unwrap();
        assert!(matches!(build_vertices(&tower, 1), Err(Error::Precondition(_))));
    }
}
