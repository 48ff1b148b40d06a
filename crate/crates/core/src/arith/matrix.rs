use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().map(|&v| BigInt::from(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a polynomial at this (square) matrix.
    pub fn eval_poly(&self, f: &IntPolynomial) -> Result<IntMatrix> {
        self.require_square()?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                acc.entries[i * n + i] += c;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// `det(xI - self)`.
    pub fn charpoly(&self) -> Result<IntPolynomial> {
        charpoly(self)
    }
}

/// Characteristic polynomial `det(xI - m)`, computed exactly with the
/// division-free Berkowitz recurrence.
pub fn charpoly(m: &IntMatrix) -> Result<IntPolynomial> {
    m.require_square()?;
    let desc = berkowitz(m.rows, |i, j| m.get(i, j).clone());
    Ok(IntPolynomial::new(desc.into_iter().rev().collect()))
}

/// Berkowitz's algorithm over any commutative ring. Returns the coefficients
/// of `det(xI - A)` from the leading term down.
pub fn berkowitz<T, F>(n: usize, entry: F) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
    F: Fn(usize, usize) -> T,
{
    let mut poly = vec![T::one()];
    for k in 0..n {
        // Leading (k+1)x(k+1) block: [[M, c], [r, a]] with M of size k.
        let a = entry(k, k);
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(T::one());
        toeplitz.push(-a);
        let mut v: Vec<T> = (0..k).map(|i| entry(i, k)).collect();
        for step in 0..k {
            let rv = (0..k).fold(T::zero(), |acc, i| acc + entry(k, i) * v[i].clone());
            toeplitz.push(-rv);
            if step + 1 < k {
                v = (0..k)
                    .map(|i| {
                        (0..k).fold(T::zero(), |acc, j| acc + entry(i, j) * v[j].clone())
                    })
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(k + 2);
        for r in 0..k + 2 {
            let mut acc = T::zero();
            for c in 0..=k.min(r) {
                if r - c < toeplitz.len() {
                    acc = acc + toeplitz[r - c].clone() * poly[c].clone();
                }
            }
            next.push(acc);
        }
        poly = next;
    }
    poly
}

/// `det(I - A S + p S^2 I)` for any square `A` whose characteristic
/// polynomial is `chi`, via `sum_k c_k (1 + pS^2)^k S^(n-k)`.
pub fn bass_determinant(chi: &IntPolynomial, p: &BigInt) -> Result<IntPolynomial> {
    if !chi.is_monic() {
        return Err(Error::Contract(format!("characteristic polynomial {chi} is not monic")));
    }
    let n = chi.coeffs().len() - 1;
    let quad = IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), p.clone()]);
    let mut acc = IntPolynomial::zero();
    let mut quad_pow = IntPolynomial::one();
    for (k, c) in chi.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let term = (&quad_pow * &IntPolynomial::monomial(c.clone(), n - k)).clone();
            acc = &acc + &term;
        }
        quad_pow = &quad_pow * &quad;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let entries = r
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IntMatrix::new(r.rows, r.cols, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn charpoly_examples() {
        let m = IntMatrix::from_rows(&[vec![3]]).unwrap();
        assert_eq!(charpoly(&m).unwrap(), p(&[-3, 1]));
        assert_eq!(charpoly(&IntMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(charpoly(&swap).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(charpoly(&IntMatrix::zeros(0, 0)).unwrap(), p(&[1]));
    }

    #[test]
    fn charpoly_rejects_non_square() {
        let m = IntMatrix::from_rows(&[vec![1, 2]]).unwrap();
        assert!(matches!(charpoly(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn bass_examples() {
        let two = BigInt::from(2);
        assert_eq!(bass_determinant(&p(&[-3, 1]), &two).unwrap(), p(&[1, -3, 2]));
        let sq = p(&[1, -2, 1]);
        assert_eq!(bass_determinant(&sq, &two).unwrap(), p(&[1, -1, 2]).pow(2));
        // (1 - S + 3S^2)(1 + S + 3S^2) = 1 + 5S^2 + 9S^4
        assert_eq!(
            bass_determinant(&p(&[-1, 0, 1]), &BigInt::from(3)).unwrap(),
            p(&[1, 0, 5, 0, 9])
        );
        assert_eq!(bass_determinant(&p(&[1]), &two).unwrap(), p(&[1]));
    }

    #[test]
    fn bass_rejects_non_monic() {
        assert!(matches!(
            bass_determinant(&p(&[1, 2]), &BigInt::from(2)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn dimension_checked() {
        assert!(IntMatrix::new(2, 2, vec![BigInt::zero(); 3]).is_err());
    }
}
