use num_integer::{ExtendedGcd, Integer};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::genus::genus;
use super::linalg::{q, QMatrix};
use super::p1::P1List;
use crate::arith::IntPolynomial;
use crate::error::{Error, Result};
use crate::field::prime;

type Sparse = Vec<(usize, BigRational)>;

/// Weight-2 modular symbols for `Γ₀(M)` in the Manin presentation, with the
/// cuspidal subspace and its star-plus part.
#[derive(Clone, Debug)]
pub struct ManinSpace {
    p1: P1List,
    /// Coordinates of each Manin symbol in the quotient basis.
    coords: Vec<Sparse>,
    /// Manin symbol chosen for each quotient basis vector.
    basis: Vec<usize>,
    /// Columns span the cuspidal subspace.
    cuspidal: QMatrix,
    /// Columns span the cuspidal `+1` eigenspace of star.
    plus: QMatrix,
    /// Star restricted to the cuspidal basis.
    star: QMatrix,
}

/// `T_ℓ` on the plus part of the cuspidal space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeMatrix {
    pub ell: u64,
    pub matrix: QMatrix,
}

impl ManinSpace {
    pub fn new(m: u64) -> Result<Self> {
        let p1 = P1List::new(m);
        let n = p1.len();
        let idx = |c: i64, d: i64| p1.index(c, d).expect("unit action preserves P1");
        let rep = |i: usize| {
            let (c, d) = p1.rep(i);
            (c as i64, d as i64)
        };

        // x + xS = 0: each symbol becomes ± a free symbol or zero.
        let mut free_of: Vec<Option<(usize, i64)>> = vec![None; n];
        let mut free = Vec::new();
        for i in 0..n {
            let (c, d) = rep(i);
            let s = idx(d, -c);
            if s > i {
                free_of[i] = Some((free.len(), 1));
                free.push(i);
            } else if s < i {
                free_of[i] = free_of[s].map(|(f, sign)| (f, -sign));
            }
        }

        // x + xT + xT² = 0 over the free symbols.
        let mut seen = vec![false; n];
        let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let (c, d) = rep(i);
            let orbit = [i, idx(d, -c - d), idx(-c - d, c)];
            let mut row: Vec<(usize, i64)> = Vec::new();
            for &g in &orbit {
                seen[g] = true;
                if let Some((f, sign)) = free_of[g] {
                    match row.iter_mut().find(|(k, _)| *k == f) {
                        Some(entry) => entry.1 += sign,
                        None => row.push((f, sign)),
                    }
                }
            }
            row.retain(|(_, v)| *v != 0);
            if !row.is_empty() {
                rows.push(row);
            }
        }
        let mut rel = QMatrix::zeros(rows.len(), free.len());
        for (r, row) in rows.iter().enumerate() {
            for &(f, v) in row {
                rel.set(r, f, q(v));
            }
        }
        let (rref, pivots) = rel.rref();
        let nonpivot: Vec<usize> = (0..free.len()).filter(|f| !pivots.contains(f)).collect();
        let mut position = vec![usize::MAX; free.len()];
        for (k, &f) in nonpivot.iter().enumerate() {
            position[f] = k;
        }
        let mut free_coords: Vec<Sparse> = vec![Vec::new(); free.len()];
        for &f in &nonpivot {
            free_coords[f] = vec![(position[f], BigRational::one())];
        }
        for (r, &p) in pivots.iter().enumerate() {
            free_coords[p] = nonpivot
                .iter()
                .filter(|&&c| !rref.get(r, c).is_zero())
                .map(|&c| (position[c], -rref.get(r, c).clone()))
                .collect();
        }
        let coords: Vec<Sparse> = free_of
            .iter()
            .map(|entry| match entry {
                None => Vec::new(),
                Some((f, sign)) => free_coords[*f]
                    .iter()
                    .map(|(k, v)| (*k, v * q(*sign)))
                    .collect(),
            })
            .collect();
        let basis: Vec<usize> = nonpivot.iter().map(|&f| free[f]).collect();
        let dim = basis.len();

        let boundary = boundary_matrix(&p1, &basis);
        let star_full = {
            let mut s = QMatrix::zeros(dim, dim);
            for (b, &g) in basis.iter().enumerate() {
                let (c, d) = rep(g);
                for (k, v) in &coords[idx(-c, d)] {
                    s.set(*k, b, -v.clone());
                }
            }
            s
        };
        let cuspidal = boundary.kernel();
        let plus = star_full.sub(&QMatrix::identity(dim)).stack(&boundary).kernel();
        let star = cuspidal.solve_in_span(&star_full.mul(&cuspidal)?)?;
        Ok(ManinSpace {
            p1,
            coords,
            basis,
            cuspidal,
            plus,
            star,
        })
    }

    pub fn level(&self) -> u64 {
        self.p1.level()
    }

    /// Number of Manin symbols.
    pub fn generator_count(&self) -> usize {
        self.p1.len()
    }

    /// Dimension of the full space of modular symbols.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn cuspidal_dimension(&self) -> usize {
        self.cuspidal.cols()
    }

    pub fn plus_dimension(&self) -> usize {
        self.plus.cols()
    }

    /// Star involution on the cuspidal basis.
    pub fn star(&self) -> &QMatrix {
        &self.star
    }

    /// `T_ℓ` on the full space, in the quotient basis.
    fn hecke_full(&self, l: u64) -> Result<QMatrix> {
        let m = self.level();
        if !prime::is_prime(l) {
            return Err(Error::Precondition(format!("ℓ = {l} is not prime")));
        }
        if m.is_multiple_of(l) {
            return Err(Error::Unsupported(format!("U_{l} at level {m}")));
        }
        let heilbronn = heilbronn_merel(l);
        let dim = self.dimension();
        let mut t = QMatrix::zeros(dim, dim);
        for (b, &g) in self.basis.iter().enumerate() {
            let (c, d) = self.p1.rep(g);
            let (c, d) = (c as i64, d as i64);
            for &[a, bb, e, f] in &heilbronn {
                let k = self
                    .p1
                    .index(c * a + d * e, c * bb + d * f)
                    .ok_or_else(|| Error::Internal("Heilbronn image outside P1".into()))?;
                for (row, v) in &self.coords[k] {
                    let w = t.get(*row, b) + v;
                    t.set(*row, b, w);
                }
            }
        }
        Ok(t)
    }

    /// `T_ℓ` on the plus part of the cuspidal space.
    pub fn hecke_matrix(&self, l: u64) -> Result<HeckeMatrix> {
        let t = self.hecke_full(l)?;
        let matrix = self.plus.solve_in_span(&t.mul(&self.plus)?)?;
        Ok(HeckeMatrix { ell: l, matrix })
    }

    /// `T_ℓ` on the whole cuspidal space.
    pub fn hecke_matrix_cuspidal(&self, l: u64) -> Result<HeckeMatrix> {
        let t = self.hecke_full(l)?;
        let matrix = self.cuspidal.solve_in_span(&t.mul(&self.cuspidal)?)?;
        Ok(HeckeMatrix { ell: l, matrix })
    }

    /// Characteristic polynomial of `T_ℓ` on the plus part.
    pub fn hecke_charpoly(&self, l: u64) -> Result<IntPolynomial> {
        self.hecke_matrix(l)?.matrix.integer_charpoly()
    }

    /// Checks the dimension against the genus formula.
    pub fn check_dimension(&self) -> Result<()> {
        let g = genus(self.level()) as usize;
        if self.cuspidal_dimension() != 2 * g || self.plus_dimension() != g {
            return Err(Error::Internal(format!(
                "level {}: cuspidal dimension {} and plus dimension {}, genus {g}",
                self.level(),
                self.cuspidal_dimension(),
                self.plus_dimension()
            )));
        }
        Ok(())
    }
}

/// Matrices `[[a, b], [c, d]]` with `ad - bc = ℓ`, `a > b ≥ 0`, `d > c ≥ 0`.
pub fn heilbronn_merel(l: u64) -> Vec<[i64; 4]> {
    let l = l as i64;
    let mut out = Vec::new();
    for a in 1..=l {
        for d in 1..=(l + 1 - a) {
            for b in 0..a {
                if b == 0 {
                    if a * d == l {
                        out.extend((0..d).map(|c| [a, 0, c, d]));
                    }
                    continue;
                }
                let bc = a * d - l;
                if bc >= 0 && bc % b == 0 && bc / b < d {
                    out.push([a, b, bc / b, d]);
                }
            }
        }
    }
    out
}

/// Lift of `(c, d)` to the bottom row of a matrix in `SL₂(Z)`.
fn lift_to_sl2z(c: u64, d: u64, m: u64) -> [i128; 4] {
    let (m, mut c, d) = (m as i128, c as i128, d as i128);
    if c == 0 {
        c = m;
    }
    let mut d = d;
    while c.gcd(&d) != 1 {
        d += m;
    }
    let ExtendedGcd { x, y, .. } = c.extended_gcd(&d);
    // x c + y d = 1, so [[y, -x], [c, d]] has determinant 1
    [y, -x, c, d]
}

/// Cusp `p/q` in lowest terms with `q ≥ 0`; infinity is `1/0`.
fn normalize_cusp(p: i128, q: i128) -> (i128, i128) {
    if q == 0 {
        return (1, 0);
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    if q < 0 {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// Cremona's criterion for `Γ₀(M)`-equivalence of cusps.
fn cusps_equivalent(a: (i128, i128), b: (i128, i128), m: i128) -> bool {
    let s = |(p, q): (i128, i128)| -> i128 {
        if q == 0 {
            1
        } else {
            p.extended_gcd(&q).x
        }
    };
    let modulus = (a.1 * b.1).gcd(&m);
    (s(a) * b.1 - s(b) * a.1).rem_euclid(modulus) == 0
}

fn boundary_matrix(p1: &P1List, basis: &[usize]) -> QMatrix {
    let m = p1.level() as i128;
    let mut cusps: Vec<(i128, i128)> = Vec::new();
    let mut class = |c: (i128, i128)| -> usize {
        match cusps.iter().position(|&k| cusps_equivalent(k, c, m)) {
            Some(i) => i,
            None => {
                cusps.push(c);
                cusps.len() - 1
            }
        }
    };
    let mut columns: Vec<Vec<(usize, i64)>> = Vec::with_capacity(basis.len());
    for &g in basis {
        let (c, d) = p1.rep(g);
        let [a, b, c, d] = lift_to_sl2z(c, d, p1.level());
        let head = class(normalize_cusp(a, c));
        let tail = class(normalize_cusp(b, d));
        columns.push(vec![(head, 1), (tail, -1)]);
    }
    let mut out = QMatrix::zeros(cusps.len().max(1), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for &(i, v) in col {
            let w = out.get(i, j) + q(v);
            out.set(i, j, w);
        }
    }
    out
}

/// Cuspidal weight-2 modular symbols of level `M`.
pub fn cuspidal_space(m: u64) -> Result<ManinSpace> {
    ManinSpace::new(m)
}

/// Characteristic polynomial of `T_ℓ` on the plus part of the cuspidal
/// modular symbols of level `M`.
pub fn hecke_charpoly(m: u64, l: u64) -> Result<IntPolynomial> {
    ManinSpace::new(m)?.hecke_charpoly(l)
}
