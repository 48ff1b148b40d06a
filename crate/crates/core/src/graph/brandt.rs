use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{Vertex, VertexKey};
use crate::arith::IntMatrix;
use crate::elliptic::{cyclic_subgroups, isomorphism_scale, subgroup_from_generator};
use crate::elliptic::{transport_kernel, velu, Isogeny};
use crate::error::{Error, Result};
use crate::field::{prime, FieldElement, FieldTower};

/// `B_ℓ` on the given vertices: entry `(i, j)` counts the subgroups `D` of
/// order `ℓ` on `E_i` with `(E_i/D, (C_i + D)/D) ≅ (E_j, C_j)`.
pub fn brandt_matrix(tower: &FieldTower, vertices: &[Vertex], l: u64) -> Result<IntMatrix> {
    let q = tower.characteristic();
    let n = vertices.first().map_or(1, |v| v.level_structure.order);
    if !prime::is_prime(l) || q.is_multiple_of(l) || n.is_multiple_of(l) {
        return Err(Error::Precondition(format!("ℓ = {l} must be a prime prime to qN")));
    }
    let index: HashMap<&VertexKey, usize> = vertices.iter().map(|v| (&v.key, v.index)).collect();
    let mut curves = BTreeMap::new();
    for v in vertices {
        curves.entry(v.key.j.clone()).or_insert_with(|| v.curve.clone());
    }
    let js: Vec<&FieldElement> = curves.keys().collect();
    let isogenies: Vec<Vec<Isogeny>> = js
        .par_iter()
        .map(|j| {
            let e = &curves[*j];
            cyclic_subgroups(tower, e, l)?
                .iter()
                .map(|d| velu(tower, e, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let by_j: BTreeMap<&FieldElement, &Vec<Isogeny>> = js.iter().copied().zip(isogenies.iter()).collect();

    let f = tower.level(2);
    let rows: Vec<Vec<i64>> = vertices
        .par_iter()
        .map(|v| -> Result<Vec<i64>> {
            let mut row = vec![0i64; vertices.len()];
            for phi in by_j[&v.key.j] {
                let cod = phi.codomain();
                let j2 = cod.j_invariant(&f);
                let target = curves.get(&j2).ok_or_else(|| {
                    Error::Internal(format!("isogeny target j = {j2} is not supersingular"))
                })?;
                let u2 = isomorphism_scale(&f, cod, target)?;
                let kernel = image_kernel(tower, phi, v, n)?;
                let lf = tower.level(kernel.level());
                let kernel = transport_kernel(&kernel, &tower.embed(&u2, kernel.level())?, &lf);
                let kernel = kernel.descend(tower, 2)?.ok_or_else(|| {
                    Error::Internal("image level structure is not defined over F_q^2".into())
                })?;
                let key = VertexKey { j: j2, kernel };
                let col = index
                    .get(&key)
                    .ok_or_else(|| Error::Internal("isogeny target matches no vertex".into()))?;
                row[*col] += 1;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(&rows)
}

/// Kernel polynomial of `φ(C)` on the codomain of `φ`.
fn image_kernel(
    tower: &FieldTower,
    phi: &Isogeny,
    v: &Vertex,
    n: u64,
) -> Result<crate::field::FieldPoly> {
    if n == 1 {
        return Ok(crate::field::FieldPoly::one(&tower.level(2)));
    }
    let c = &v.level_structure;
    let image = phi.evaluate(tower, &c.generator)?;
    let cod = phi.codomain().base_change(tower, c.level)?;
    Ok(subgroup_from_generator(tower, &cod, &image, n, 2)?.kernel_poly)
}
