use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement, FieldTower};

/// Short Weierstrass curve `y^2 = x^3 + a x + b` over a tower level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticCurve {
    a: FieldElement,
    b: FieldElement,
    level: u32,
}

/// An affine point or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn level(&self) -> Option<u32> {
        self.x().map(FieldElement::level)
    }

    pub fn embed(&self, tower: &FieldTower, to: u32) -> Result<CurvePoint> {
        Ok(match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: tower.embed(x, to)?,
                y: tower.embed(y, to)?,
            },
        })
    }
}

impl EllipticCurve {
    pub fn new(field: &ExtField, a: FieldElement, b: FieldElement) -> Result<Self> {
        let curve = EllipticCurve {
            level: field.degree(),
            a,
            b,
        };
        if curve.discriminant_part(field).is_zero() {
            return Err(Error::Contract(format!(
                "singular curve y^2 = x^3 + ({})x + ({})",
                curve.a, curve.b
            )));
        }
        Ok(curve)
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `4a^3 + 27b^2`.
    fn discriminant_part(&self, f: &ExtField) -> FieldElement {
        let a3 = f.mul(&f.square(&self.a), &self.a);
        f.add(&f.scale(&a3, 4), &f.scale(&f.square(&self.b), 27))
    }

    pub fn j_invariant(&self, f: &ExtField) -> FieldElement {
        let a3 = f.scale(&f.mul(&f.square(&self.a), &self.a), 4);
        let den = self.discriminant_part(f);
        f.div(&f.scale(&a3, 1728), &den).expect("nonsingular curve")
    }

    /// The same curve over a larger level.
    pub fn base_change(&self, tower: &FieldTower, to: u32) -> Result<EllipticCurve> {
        Ok(EllipticCurve {
            a: tower.embed(&self.a, to)?,
            b: tower.embed(&self.b, to)?,
            level: to,
        })
    }

    /// `x^3 + a x + b` evaluated at `x`; `a`, `b` must be at `x`'s level.
    pub fn rhs(&self, x: &FieldElement, f: &ExtField) -> FieldElement {
        let x3 = f.mul(&f.square(x), x);
        f.add(&f.add(&x3, &f.mul(&self.a, x)), &self.b)
    }

    pub fn contains(&self, p: &CurvePoint, f: &ExtField) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => f.square(y) == self.rhs(x, f),
        }
    }

    pub fn neg(&self, p: &CurvePoint, f: &ExtField) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: f.neg(y),
            },
        }
    }

    /// Group law. The curve must already live at the points' level.
    pub fn add(&self, p: &CurvePoint, r: &CurvePoint, f: &ExtField) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, r) {
            (CurvePoint::Infinity, _) => return r.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return CurvePoint::Infinity;
            }
            let num = f.add(&f.scale(&f.square(x1), 3), &self.a);
            f.div(&num, &f.scale(y1, 2)).expect("y nonzero")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("distinct x")
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &CurvePoint, f: &ExtField) -> CurvePoint {
        self.add(p, p, f)
    }

    /// `[k]P` for a signed scalar.
    pub fn mul(&self, p: &CurvePoint, k: i64, f: &ExtField) -> CurvePoint {
        let mut base = if k < 0 { self.neg(p, f) } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base, f);
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base, f);
            }
        }
        acc
    }

    /// Exact order of a point known to be killed by `m`.
    pub fn order_dividing(&self, p: &CurvePoint, m: u64, f: &ExtField) -> u64 {
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        divisors
            .into_iter()
            .find(|&d| self.mul(p, d as i64, f).is_infinity())
            .unwrap_or(0)
    }

    /// Number of points over this curve's own level, by enumerating `x`.
    pub fn count_points(&self, f: &ExtField) -> u64 {
        let mut is_square = vec![false; f.elements().len()];
        for y in f.elements() {
            is_square[f.index_of(&f.square(&y)) as usize] = true;
        }
        let mut count = 1;
        for x in f.elements() {
            let v = self.rhs(&x, f);
            if v.is_zero() {
                count += 1;
            } else if is_square[f.index_of(&v) as usize] {
                count += 2;
            }
        }
        count
    }
}

/// The canonical model `y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2` with
/// j-invariant `j`.
pub fn curve_from_j(field: &ExtField, j: &FieldElement) -> Result<EllipticCurve> {
    let c = field.sub(&field.from_u64(1728), j);
    if j.is_zero() || c.is_zero() {
        return Err(Error::UnsupportedJ(format!("j = {j} has extra automorphisms")));
    }
    let k = field.mul(j, &c);
    let a = field.scale(&k, 3);
    let b = field.scale(&field.mul(&k, &c), 2);
    EllipticCurve::new(field, a, b)
}
