//! Root finding over the tower: distinct-degree splitting against
//! `x^(Q^i) - x`, then Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::FieldPoly;
use super::tower::{ExtField, FieldElement, FieldTower};
use crate::error::{Error, Result};

/// All roots of `f` in `F_{q^level}`, repeated according to multiplicity and
/// sorted by coordinates.
pub fn roots(tower: &FieldTower, f: &FieldPoly, level: u32) -> Result<Vec<FieldElement>> {
    let distinct = distinct_roots(tower, f, level)?;
    let field = tower.level(level);
    let mut g = f.embed(tower, level)?;
    let mut out = Vec::new();
    for r in distinct {
        let lin = FieldPoly::linear(&field, &r);
        loop {
            let (quot, rem) = g.div_rem(&lin, &field)?;
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            g = quot;
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct roots of `f` in `F_{q^level}`, sorted by coordinates.
pub fn distinct_roots(tower: &FieldTower, f: &FieldPoly, level: u32) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::Precondition("roots of the zero polynomial".into()));
    }
    let c = f.level();
    if !level.is_multiple_of(c) {
        return Err(Error::Precondition(format!(
            "polynomial at level {c} cannot be solved in level {level}"
        )));
    }
    let m = level / c;
    let base = tower.level(c);
    let f = f.monic(&base)?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(tower.seed());
    let x = FieldPoly::x(&base);
    // frob[i] = x^(Q^i) mod f, Q = q^c
    let xq = x.pow_mod(base.order(), &f, &base)?;
    let mut frob = vec![x.rem(&f, &base)?, xq.clone()];
    for _ in 1..m {
        let next = frob.last().unwrap().compose_mod(&xq, &f, &base)?;
        frob.push(next);
    }
    let mut g = f.gcd(&frob[m as usize].sub(&x, &base), &base)?;
    let mut found = Vec::new();
    for e in 1..=m {
        if g.degree() == Some(0) {
            break;
        }
        if !m.is_multiple_of(e) {
            continue;
        }
        let fe = frob[e as usize].rem(&g, &base)?;
        let part = g.gcd(&fe.sub(&x, &base), &base)?;
        if part.degree() == Some(0) {
            continue;
        }
        g = g.div_rem(&part, &base)?.0;
        let mut factors = Vec::new();
        equal_degree_split(&base, &part, e as usize, &frob, &mut rng, &mut factors)?;
        for h in factors {
            if e == 1 {
                let r = base.neg(&h.coeffs()[0]);
                found.push(tower.embed(&r, level)?);
            } else {
                let target = tower.level(level);
                let he = h.embed(tower, level)?;
                split_to_linear(&target, &he, &mut rng, &mut found)?;
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

fn random_poly(field: &ExtField, below: usize, rng: &mut ChaCha8Rng) -> FieldPoly {
    FieldPoly::new(
        field.degree(),
        (0..below).map(|_| field.random(rng)).collect(),
    )
}

/// Splits a squarefree `h` whose irreducible factors all have degree `e`
/// over `field`. `frob[i]` holds `x^(Q^i)` modulo a multiple of `h`.
fn equal_degree_split(
    field: &ExtField,
    h: &FieldPoly,
    e: usize,
    frob: &[FieldPoly],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FieldPoly>,
) -> Result<()> {
    let n = h.degree().unwrap_or(0);
    if n == e {
        out.push(h.clone());
        return Ok(());
    }
    let half = (field.order() - 1u32) >> 1;
    let frob_h: Vec<FieldPoly> = frob[..e]
        .iter()
        .map(|p| p.rem(h, field))
        .collect::<Result<_>>()?;
    let one = FieldPoly::one(field);
    loop {
        let t = random_poly(field, n, rng);
        if t.degree().unwrap_or(0) == 0 {
            continue;
        }
        // t^((Q^e - 1)/2) = prod_{i<e} (t^((Q-1)/2))^(Q^i)
        let u = t.pow_mod(&half, h, field)?;
        let mut w = u.clone();
        for fi in &frob_h[1..] {
            w = w.mul(&u.compose_mod(fi, h, field)?, field).rem(h, field)?;
        }
        let d = h.gcd(&w.sub(&one, field), field)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let rest = h.div_rem(&d, field)?.0.monic(field)?;
            equal_degree_split(field, &d, e, frob, rng, out)?;
            equal_degree_split(field, &rest, e, frob, rng, out)?;
            return Ok(());
        }
    }
}

/// Splits a squarefree `h` that factors completely over `field`.
fn split_to_linear(
    field: &ExtField,
    h: &FieldPoly,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FieldElement>,
) -> Result<()> {
    let h = h.monic(field)?;
    match h.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(field.neg(&h.coeffs()[0]));
            return Ok(());
        }
        _ => {}
    }
    let half: BigUint = (field.order() - 1u32) >> 1;
    let one = FieldPoly::one(field);
    let n = h.degree().unwrap();
    loop {
        let a = field.random(rng);
        let t = FieldPoly::new(field.degree(), vec![a, field.one()]);
        let w = t.pow_mod(&half, &h, field)?;
        let d = h.gcd(&w.sub(&one, field), field)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let rest = h.div_rem(&d, field)?.0;
            split_to_linear(field, &d, rng, out)?;
            split_to_linear(field, &rest, rng, out)?;
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_minus_one_mod_5() {
        let tower = FieldTower::new(5, 0).unwrap();
        let f1 = tower.level(1);
        let f = FieldPoly::from_base(&f1, &[4, 0, 1]);
        let r = roots(&tower, &f, 1).unwrap();
        assert_eq!(r, vec![f1.from_u64(1), f1.from_u64(4)]);
    }

    #[test]
    fn x_squared_plus_one_mod_13() {
        let tower = FieldTower::new(13, 0).unwrap();
        let f1 = tower.level(1);
        let f = FieldPoly::from_base(&f1, &[1, 0, 1]);
        let r = roots(&tower, &f, 1).unwrap();
        assert_eq!(r, vec![f1.from_u64(5), f1.from_u64(8)]);
    }

    #[test]
    fn irreducible_quadratic_has_roots_one_level_up() {
        let tower = FieldTower::new(13, 0).unwrap();
        let f1 = tower.level(1);
        let f = FieldPoly::from_base(&f1, &[2, 0, 1]); // x^2 + 2, -2 non-residue mod 13
        assert!(roots(&tower, &f, 1).unwrap().is_empty());
        let r = roots(&tower, &f, 2).unwrap();
        assert_eq!(r.len(), 2);
        let f2 = tower.level(2);
        let fe = f.embed(&tower, 2).unwrap();
        for x in &r {
            assert!(fe.eval(x, &f2).is_zero());
        }
    }

    #[test]
    fn multiplicities_are_reported() {
        let tower = FieldTower::new(7, 0).unwrap();
        let f1 = tower.level(1);
        // (x-1)^3 (x-2)
        let f = FieldPoly::from_roots(
            &f1,
            &[f1.from_u64(1), f1.from_u64(1), f1.from_u64(1), f1.from_u64(2)],
        );
        let r = roots(&tower, &f, 1).unwrap();
        assert_eq!(r, vec![f1.from_u64(1), f1.from_u64(1), f1.from_u64(1), f1.from_u64(2)]);
    }
}
