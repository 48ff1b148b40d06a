use super::curve::{CurvePoint, EllipticCurve};
use super::subgroups::SubgroupKernel;
use crate::error::{Error, Result};
use crate::field::{prime, FieldElement, FieldPoly, FieldTower};

/// A normalized isogeny of prime degree given by Vélu's formulas in Kohel's
/// kernel-polynomial form: `x ↦ nx(x)/dx(x)`, `y ↦ y·ny(x)/dx(x)^2`.
#[derive(Clone, Debug)]
pub struct Isogeny {
    degree: u64,
    level: u32,
    domain: EllipticCurve,
    codomain: EllipticCurve,
    nx: FieldPoly,
    dx: FieldPoly,
    ny: FieldPoly,
}

impl Isogeny {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Level of the isogeny's coefficients.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn domain(&self) -> &EllipticCurve {
        &self.domain
    }

    pub fn codomain(&self) -> &EllipticCurve {
        &self.codomain
    }

    /// `x`-coordinate map as (numerator, denominator).
    pub fn x_map(&self) -> (&FieldPoly, &FieldPoly) {
        (&self.nx, &self.dx)
    }

    /// Image of a point at any level divisible by the isogeny's level.
    pub fn evaluate(&self, tower: &FieldTower, p: &CurvePoint) -> Result<CurvePoint> {
        let (x, y) = match p {
            CurvePoint::Infinity => return Ok(CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let level = x.level();
        if level % self.level != 0 {
            return Err(Error::Contract(format!(
                "point at level {level} is not over the isogeny's level {}",
                self.level
            )));
        }
        let f = tower.level(level);
        let lift = |p: &FieldPoly| -> Result<FieldElement> {
            Ok(if level == self.level { p.eval(x, &f) } else { p.embed(tower, level)?.eval(x, &f) })
        };
        let d = lift(&self.dx)?;
        if d.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let dinv = f.inv(&d)?;
        let xx = f.mul(&lift(&self.nx)?, &dinv);
        let yy = f.mul(&f.mul(y, &lift(&self.ny)?), &f.square(&dinv));
        Ok(CurvePoint::Affine { x: xx, y: yy })
    }
}

/// The isogeny `E → E/D` for a subgroup `D` of prime order.
pub fn velu(tower: &FieldTower, curve: &EllipticCurve, kernel: &SubgroupKernel) -> Result<Isogeny> {
    let l = kernel.order;
    if !prime::is_prime(l) {
        return Err(Error::Unsupported(format!("isogeny of composite degree {l}")));
    }
    // the generator must be a point of exact order l on the curve
    let gen_level = kernel.level;
    if !gen_level.is_multiple_of(curve.level()) {
        return Err(Error::Contract("generator not over the curve's field".into()));
    }
    let fg = tower.level(gen_level);
    let eg = curve.base_change(tower, gen_level)?;
    if kernel.generator.level() != Some(gen_level)
        || !eg.contains(&kernel.generator, &fg)
        || !eg.mul(&kernel.generator, l as i64, &fg).is_infinity()
    {
        return Err(Error::Contract("kernel generator is not an l-torsion point on the curve".into()));
    }

    let level = lcm(curve.level(), kernel.kernel_poly.level());
    let f = tower.level(level);
    let e = curve.base_change(tower, level)?;
    let h = kernel.kernel_poly.embed(tower, level)?.monic(&f)?;
    let (a, b) = (e.a().clone(), e.b().clone());
    let d = h.degree().unwrap_or(0);
    if d as u64 != (l - 1) / 2 && !(l == 2 && d == 1) {
        return Err(Error::Contract(format!("kernel polynomial of degree {d} for order {l}")));
    }
    let rhs = FieldPoly::new(level, vec![b.clone(), a.clone(), f.zero(), f.one()]);

    let (nx, dx, t, w) = if l == 2 {
        let x0 = f.neg(&h.coeff(0, &f));
        let t = f.add(&f.scale(&f.square(&x0), 3), &a);
        let w = f.mul(&x0, &t);
        // x + t/(x - x0)
        let nx = FieldPoly::x(&f).mul(&h, &f).add(&FieldPoly::constant(t.clone()), &f);
        (nx, h.clone(), t, w)
    } else {
        let s1 = f.neg(&h.coeff(d - 1, &f));
        let sigma = |k: usize| -> FieldElement {
            if k > d {
                return f.zero();
            }
            let c = h.coeff(d - k, &f);
            if k % 2 == 1 { f.neg(&c) } else { c }
        };
        let (e1, e2, e3) = (sigma(1), sigma(2), sigma(3));
        let p1 = e1.clone();
        let p2 = f.sub(&f.square(&e1), &f.scale(&e2, 2));
        let p3 = f.add(
            &f.sub(&f.mul(&f.square(&e1), &e1), &f.scale(&f.mul(&e1, &e2), 3)),
            &f.scale(&e3, 3),
        );
        let dd = f.from_u64(d as u64);
        let t = f.add(&f.scale(&p2, 6), &f.scale(&f.mul(&a, &dd), 2));
        let w = f.add(
            &f.add(&f.scale(&p3, 10), &f.scale(&f.mul(&a, &p1), 6)),
            &f.scale(&f.mul(&b, &dd), 4),
        );
        let h1 = h.derivative(&f);
        let h2 = h1.derivative(&f);
        let hh = h.mul(&h, &f);
        let lin = FieldPoly::new(level, vec![f.neg(&f.scale(&s1, 2)), f.from_u64(l)]);
        let six = FieldPoly::new(level, vec![f.scale(&a, 2), f.zero(), f.from_u64(6)]);
        let nx = lin
            .mul(&hh, &f)
            .sub(&rhs.mul(&h2.mul(&h, &f).sub(&h1.mul(&h1, &f), &f), &f).scale(&f.from_u64(4), &f), &f)
            .sub(&six.mul(&h1, &f).mul(&h, &f), &f);
        (nx, hh, t, w)
    };
    let ny = nx
        .derivative(&f)
        .mul(&dx, &f)
        .sub(&nx.mul(&dx.derivative(&f), &f), &f);
    let codomain = EllipticCurve::new(
        &f,
        f.sub(&a, &f.scale(&t, 5)),
        f.sub(&b, &f.scale(&w, 7)),
    )?;
    Ok(Isogeny {
        degree: l,
        level,
        domain: curve.clone(),
        codomain,
        nx,
        dx,
        ny,
    })
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / num_integer::gcd(a, b) * b
}
