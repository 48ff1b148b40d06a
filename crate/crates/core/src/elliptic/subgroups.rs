use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::curve::{CurvePoint, EllipticCurve};
use super::division::division_polynomial;
use crate::error::{Error, Result};
use crate::field::{distinct_roots, FieldPoly, FieldTower};

/// A cyclic subgroup of order `order`, stored as its kernel polynomial and a
/// canonical generator. `kernel_poly` lives at the smallest level among the
/// curve level and its quadratic extension that contains it; the generator
/// lives at `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupKernel {
    pub order: u64,
    pub kernel_poly: FieldPoly,
    pub generator: CurvePoint,
    pub level: u32,
}

/// `N * prod (1 + 1/l)`, the number of cyclic subgroups of order `N`.
pub fn psi(n: u64) -> u64 {
    let mut out = n;
    for l in crate::field::prime::prime_factors(n) {
        out = out / l * (l + 1);
    }
    out
}

/// Smallest level `L`, a multiple of the curve's level, with
/// `E[m] ⊆ E(F_{q^L})`, together with the nonzero `m`-torsion points there.
pub fn torsion_points(
    tower: &FieldTower,
    curve: &EllipticCurve,
    m: u64,
) -> Result<(u32, Vec<CurvePoint>)> {
    let c = curve.level();
    if m == 1 {
        return Ok((c, Vec::new()));
    }
    let q = tower.characteristic();
    if m.is_multiple_of(q) {
        return Err(Error::Precondition(format!("level {m} divisible by the characteristic")));
    }
    let f = tower.level(c);
    let dp = division_polynomial(curve, m, &f).monic(&f)?;
    let x = FieldPoly::x(&f);
    let frob = x.pow_mod(f.order(), &dp, &f)?;
    // dp is squarefree, so its roots lie in F_{Q^k} iff x^{Q^k} = x mod dp
    let cap = m * m;
    let mut k0 = 1u64;
    let mut xk = frob.clone();
    while xk != x.rem(&dp, &f)? {
        k0 += 1;
        if k0 > cap {
            return Err(Error::Internal(format!("{m}-torsion not found within degree {cap}")));
        }
        xk = xk.compose_mod(&frob, &dp, &f)?;
    }
    let expected = (m * m - 1) as usize;
    for k in [k0, 2 * k0] {
        let level = c * k as u32;
        let fl = tower.level(level);
        let el = curve.base_change(tower, level)?;
        let xs = distinct_roots(tower, &dp, level)?;
        let mut pts = Vec::with_capacity(expected);
        for xr in xs {
            let v = el.rhs(&xr, &fl);
            if v.is_zero() {
                pts.push(CurvePoint::Affine { x: xr, y: fl.zero() });
                continue;
            }
            let Some(y) = fl.sqrt(&v) else { break };
            pts.push(CurvePoint::Affine { x: xr.clone(), y: fl.neg(&y) });
            pts.push(CurvePoint::Affine { x: xr, y });
        }
        if pts.len() == expected {
            pts.sort();
            return Ok((level, pts));
        }
    }
    Err(Error::Internal(format!("{m}-torsion does not have {expected} nonzero points")))
}

/// All cyclic subgroups of order `m`, sorted by kernel polynomial.
pub fn cyclic_subgroups(
    tower: &FieldTower,
    curve: &EllipticCurve,
    m: u64,
) -> Result<Vec<SubgroupKernel>> {
    let c = curve.level();
    if m == 1 {
        return Ok(vec![SubgroupKernel {
            order: 1,
            kernel_poly: FieldPoly::one(&tower.level(c)),
            generator: CurvePoint::Infinity,
            level: c,
        }]);
    }
    let (level, pts) = torsion_points(tower, curve, m)?;
    let fl = tower.level(level);
    let el = curve.base_change(tower, level)?;
    let mut covered = BTreeSet::new();
    let mut out = Vec::new();
    for p in &pts {
        if covered.contains(p) || el.order_dividing(p, m, &fl) != m {
            continue;
        }
        let mut acc = CurvePoint::Infinity;
        for k in 1..m {
            acc = el.add(&acc, p, &fl);
            if num_integer::gcd(k, m) == 1 {
                covered.insert(acc.clone());
            }
        }
        out.push(subgroup_from_generator(tower, &el, p, m, c)?);
    }
    out.sort_by(|a, b| a.kernel_poly.cmp(&b.kernel_poly));
    if out.len() as u64 != psi(m) {
        return Err(Error::Internal(format!(
            "found {} cyclic subgroups of order {m}, expected {}",
            out.len(),
            psi(m)
        )));
    }
    Ok(out)
}

/// The subgroup generated by `p`, a point of exact order `m` on `curve_at`
/// (the curve over `p`'s level). The kernel polynomial is descended towards
/// level `base` when possible.
pub fn subgroup_from_generator(
    tower: &FieldTower,
    curve_at: &EllipticCurve,
    p: &CurvePoint,
    m: u64,
    base: u32,
) -> Result<SubgroupKernel> {
    let level = curve_at.level();
    let f = tower.level(level);
    if m == 1 {
        return Ok(SubgroupKernel {
            order: 1,
            kernel_poly: FieldPoly::one(&tower.level(base)),
            generator: CurvePoint::Infinity,
            level: base,
        });
    }
    let mut xs = Vec::new();
    let mut acc = CurvePoint::Infinity;
    for k in 1..=m / 2 {
        acc = curve_at.add(&acc, p, &f);
        match acc.x() {
            Some(x) => xs.push(x.clone()),
            None => {
                return Err(Error::Contract(format!("generator has order {k}, expected {m}")))
            }
        }
    }
    if !curve_at.mul(p, m as i64, &f).is_infinity() {
        return Err(Error::Contract(format!("generator is not killed by {m}")));
    }
    let kernel = FieldPoly::from_roots(&f, &xs);
    Ok(SubgroupKernel {
        order: m,
        kernel_poly: descend_kernel(tower, kernel, base)?,
        generator: p.clone(),
        level,
    })
}

/// Moves a kernel polynomial to level `c` or, failing that, `2c`.
pub(crate) fn descend_kernel(tower: &FieldTower, poly: FieldPoly, c: u32) -> Result<FieldPoly> {
    for target in [c, 2 * c] {
        if poly.level().is_multiple_of(target) {
            if let Some(p) = poly.descend(tower, target)? {
                return Ok(p);
            }
        }
    }
    Ok(poly)
}
