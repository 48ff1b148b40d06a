use std::collections::HashMap;

use super::curve::EllipticCurve;
use crate::field::{ExtField, FieldPoly};

/// Univariate parts `g_m` of the division polynomials: `psi_m` for odd `m`,
/// `psi_m / y` for even `m`.
struct Recurrence<'a> {
    f: &'a ExtField,
    rhs: FieldPoly,
    memo: HashMap<u64, FieldPoly>,
}

impl<'a> Recurrence<'a> {
    fn new(curve: &EllipticCurve, f: &'a ExtField) -> Self {
        let (a, b) = (curve.a(), curve.b());
        let c = |v: u64| f.from_u64(v);
        let rhs = FieldPoly::new(f.degree(), vec![b.clone(), a.clone(), f.zero(), f.one()]);
        let a2 = f.square(a);
        let g3 = FieldPoly::new(
            f.degree(),
            vec![f.neg(&a2), f.scale(b, 12), f.scale(a, 6), f.zero(), c(3)],
        );
        let ab = f.mul(a, b);
        let a3 = f.mul(&a2, a);
        let g4 = FieldPoly::new(
            f.degree(),
            vec![
                f.neg(&f.add(&f.scale(&f.square(b), 8), &a3)),
                f.neg(&f.scale(&ab, 4)),
                f.neg(&f.scale(&a2, 5)),
                f.scale(b, 20),
                f.scale(a, 5),
                f.zero(),
                f.one(),
            ],
        )
        .scale(&c(4), f);
        let mut memo = HashMap::new();
        memo.insert(0, FieldPoly::zero(f.degree()));
        memo.insert(1, FieldPoly::one(f));
        memo.insert(2, FieldPoly::constant(c(2)));
        memo.insert(3, g3);
        memo.insert(4, g4);
        Recurrence { f, rhs, memo }
    }

    fn get(&mut self, m: u64) -> FieldPoly {
        if let Some(p) = self.memo.get(&m) {
            return p.clone();
        }
        let f = self.f;
        let k = m / 2;
        let out = if m % 2 == 1 {
            let t1 = self.get(k + 2).mul(&cube(&self.get(k), f), f);
            let t2 = self.get(k - 1).mul(&cube(&self.get(k + 1), f), f);
            let f2 = self.rhs.mul(&self.rhs, f);
            if k.is_multiple_of(2) {
                f2.mul(&t1, f).sub(&t2, f)
            } else {
                t1.sub(&f2.mul(&t2, f), f)
            }
        } else {
            let gk1 = self.get(k - 1);
            let gk2 = self.get(k + 1);
            let inner = self
                .get(k + 2)
                .mul(&gk1.mul(&gk1, f), f)
                .sub(&self.get(k - 2).mul(&gk2.mul(&gk2, f), f), f);
            let half = f.inv(&f.from_u64(2)).expect("odd characteristic");
            self.get(k).mul(&inner, f).scale(&half, f)
        };
        self.memo.insert(m, out.clone());
        out
    }
}

fn cube(p: &FieldPoly, f: &ExtField) -> FieldPoly {
    p.mul(p, f).mul(p, f)
}

/// Polynomial in `x` whose roots are the x-coordinates of the nonzero
/// `m`-torsion points: `psi_m` for odd `m`, `(x^3+ax+b) psi_m / (2y)` for even
/// `m`. Defined over the curve's level.
pub fn division_polynomial(curve: &EllipticCurve, m: u64, f: &ExtField) -> FieldPoly {
    assert!(m >= 1, "division polynomial index must be positive");
    let mut rec = Recurrence::new(curve, f);
    let g = rec.get(m);
    if m % 2 == 1 {
        g
    } else {
        let half = f.inv(&f.from_u64(2)).expect("odd characteristic");
        rec.rhs.mul(&g, f).scale(&half, f)
    }
}
