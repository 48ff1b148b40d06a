use super::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::field::{distinct_roots, prime, FieldElement, FieldPoly, FieldTower};

/// Largest field size for which supersingularity is decided by counting points.
const POINT_COUNT_LIMIT: u64 = 1_000_000;

/// Deuring's polynomial `H(λ) = Σ C(m,i)^2 λ^i`, `m = (q-1)/2`, over `F_q`.
pub fn deuring_polynomial(tower: &FieldTower) -> FieldPoly {
    let q = tower.characteristic();
    let m = (q - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut binom = 1u64;
    for i in 0..=m {
        coeffs.push(prime::mul(binom, binom, q));
        if i < m {
            binom = prime::mul(binom, m - i, q);
            binom = prime::mul(binom, prime::inv(i + 1, q), q);
        }
    }
    FieldPoly::from_base(&tower.level(1), &coeffs)
}

/// The supersingular j-invariants, all in `F_{q^2}`, sorted.
pub fn supersingular_j_invariants(tower: &FieldTower) -> Result<Vec<FieldElement>> {
    let q = tower.characteristic();
    let f = tower.level(2);
    let lambdas = distinct_roots(tower, &deuring_polynomial(tower), 2)?;
    let mut js: Vec<FieldElement> = lambdas
        .iter()
        .map(|l| legendre_j(l, &f))
        .collect::<Result<_>>()?;
    js.sort();
    js.dedup();
    if q % 12 == 1 && js.len() as u64 != (q - 1) / 12 {
        return Err(Error::Internal(format!(
            "found {} supersingular j-invariants, expected {}",
            js.len(),
            (q - 1) / 12
        )));
    }
    Ok(js)
}

/// `256 (λ^2-λ+1)^3 / (λ^2 (λ-1)^2)`.
fn legendre_j(l: &FieldElement, f: &crate::field::ExtField) -> Result<FieldElement> {
    let l2 = f.square(l);
    let s = f.add(&f.sub(&l2, l), &f.one());
    let num = f.scale(&f.mul(&f.square(&s), &s), 256);
    let lm1 = f.sub(l, &f.one());
    let den = f.mul(&l2, &f.square(&lm1));
    f.div(&num, &den)
}

/// Whether `curve` is supersingular. Small fields are decided by the trace
/// `q^c + 1 - #E(F_{q^c})`, larger ones by Deuring's criterion.
pub fn is_supersingular(tower: &FieldTower, curve: &EllipticCurve) -> Result<bool> {
    let f = tower.level(curve.level());
    let q = tower.characteristic();
    let size = f.order();
    if *size <= POINT_COUNT_LIMIT.into() {
        let size = u64::try_from(size).expect("small field");
        let n = curve.count_points(&f);
        let trace = (size + 1) as i128 - n as i128;
        return Ok(trace.rem_euclid(q as i128) == 0);
    }
    let j = curve.j_invariant(&f);
    let j2 = if curve.level() == 2 {
        Some(j)
    } else if curve.level() == 1 {
        Some(tower.embed(&j, 2)?)
    } else {
        tower.descend(&j, 2)?
    };
    let Some(j2) = j2 else { return Ok(false) };
    Ok(supersingular_j_invariants(tower)?.binary_search(&j2).is_ok())
}
