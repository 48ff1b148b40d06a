use super::curve::EllipticCurve;
use super::subgroups::SubgroupKernel;
use super::velu::lcm;
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement, FieldPoly, FieldTower};

/// `u^2` for the isomorphism `(x, y) ↦ (u^2 x, u^3 y)` from `src` to `dst`.
/// Both curves must be at `f`'s level with equal j-invariant other than 0, 1728.
pub fn isomorphism_scale(f: &ExtField, src: &EllipticCurve, dst: &EllipticCurve) -> Result<FieldElement> {
    if src.j_invariant(f) != dst.j_invariant(f) {
        return Err(Error::Precondition("curves are not isomorphic".into()));
    }
    if src.a().is_zero() || src.b().is_zero() {
        return Err(Error::UnsupportedJ("j = 0 or 1728".into()));
    }
    let num = f.mul(src.a(), dst.b());
    let den = f.mul(dst.a(), src.b());
    f.div(&num, &den)
}

/// Image of a kernel polynomial under `x ↦ u^2 x`.
pub fn transport_kernel(poly: &FieldPoly, u2: &FieldElement, f: &ExtField) -> FieldPoly {
    let d = poly.degree().unwrap_or(0);
    let mut scale = f.one();
    let mut coeffs = vec![f.zero(); d + 1];
    for k in (0..=d).rev() {
        coeffs[k] = f.mul(&poly.coeff(k, f), &scale);
        scale = f.mul(&scale, u2);
    }
    FieldPoly::new(f.degree(), coeffs)
}

/// Whether some isomorphism `E1 → E2` carries `C1` onto `C2`. Since the only
/// automorphisms are `±1`, this is a comparison of transported kernel
/// polynomials.
pub fn isomorphism_match(
    tower: &FieldTower,
    (e1, c1): (&EllipticCurve, &SubgroupKernel),
    (e2, c2): (&EllipticCurve, &SubgroupKernel),
) -> Result<bool> {
    if c1.order != c2.order {
        return Ok(false);
    }
    let level = [e1.level(), e2.level(), c1.kernel_poly.level(), c2.kernel_poly.level()]
        .into_iter()
        .fold(1, lcm);
    let f = tower.level(level);
    let (e1, e2) = (e1.base_change(tower, level)?, e2.base_change(tower, level)?);
    if e1.j_invariant(&f) != e2.j_invariant(&f) {
        return Ok(false);
    }
    let u2 = isomorphism_scale(&f, &e1, &e2)?;
    let k1 = transport_kernel(&c1.kernel_poly.embed(tower, level)?.monic(&f)?, &u2, &f);
    let k2 = c2.kernel_poly.embed(tower, level)?.monic(&f)?;
    Ok(k1 == k2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::curve::curve_from_j;
    use crate::elliptic::subgroups::cyclic_subgroups;
    use crate::elliptic::supersingular::supersingular_j_invariants;

    fn twist(f: &ExtField, e: &EllipticCurve, u: &FieldElement) -> EllipticCurve {
        let u2 = f.square(u);
        let u4 = f.square(&u2);
        let u6 = f.mul(&u4, &u2);
        EllipticCurve::new(f, f.mul(e.a(), &u4), f.mul(e.b(), &u6)).unwrap()
    }

    #[test]
    fn scale_recovers_u_squared() {
        let tower = FieldTower::new(37, 0).unwrap();
        let f = tower.level(2);
        let e = curve_from_j(&f, &f.from_u64(3)).unwrap();
        for v in [2u64, 5, 17] {
            let u = f.from_u64(v);
            let e2 = twist(&f, &e, &u);
            assert_eq!(isomorphism_scale(&f, &e, &e2).unwrap(), f.square(&u));
        }
    }

    #[test]
    fn match_is_an_equivalence_and_separates_subgroups() {
        let tower = FieldTower::new(37, 0).unwrap();
        let f = tower.level(2);
        let j = supersingular_j_invariants(&tower).unwrap()[1].clone();
        let e = curve_from_j(&f, &j).unwrap();
        let e2 = twist(&f, &e, &f.generator());
        let e3 = twist(&f, &e2, &f.from_u64(3));
        let s1 = cyclic_subgroups(&tower, &e, 4).unwrap();
        let s2 = cyclic_subgroups(&tower, &e2, 4).unwrap();
        let s3 = cyclic_subgroups(&tower, &e3, 4).unwrap();
        for (i, a) in s1.iter().enumerate() {
            assert!(isomorphism_match(&tower, (&e, a), (&e, a)).unwrap());
            for (k, b) in s1.iter().enumerate() {
                assert_eq!(isomorphism_match(&tower, (&e, a), (&e, b)).unwrap(), i == k);
            }
            // each subgroup of E matches exactly one subgroup of each twist
            let m2: Vec<_> = s2.iter().filter(|b| isomorphism_match(&tower, (&e, a), (&e2, b)).unwrap()).collect();
            assert_eq!(m2.len(), 1);
            assert!(isomorphism_match(&tower, (&e2, m2[0]), (&e, a)).unwrap());
            let m3: Vec<_> = s3.iter().filter(|c| isomorphism_match(&tower, (&e2, m2[0]), (&e3, c)).unwrap()).collect();
            assert_eq!(m3.len(), 1);
            assert!(isomorphism_match(&tower, (&e, a), (&e3, m3[0])).unwrap());
        }
    }

    #[test]
    fn different_j_never_match() {
        let tower = FieldTower::new(37, 0).unwrap();
        let f = tower.level(2);
        let js = supersingular_j_invariants(&tower).unwrap();
        let e1 = curve_from_j(&f, &js[0]).unwrap();
        let e2 = curve_from_j(&f, &js[1]).unwrap();
        let a = &cyclic_subgroups(&tower, &e1, 2).unwrap()[0];
        let b = &cyclic_subgroups(&tower, &e2, 2).unwrap()[0];
        assert!(!isomorphism_match(&tower, (&e1, a), (&e2, b)).unwrap());
    }
}
