//! Dense univariate polynomials over one level of a [`FieldTower`].

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::tower::{ExtField, FieldElement, FieldTower};
use crate::error::{Error, Result};

/// Polynomial with coefficients at a common tower level, constant term
/// first, with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldPoly {
    level: u32,
    coeffs: Vec<FieldElement>,
}

impl FieldPoly {
    pub fn new(level: u32, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.level() == level));
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        FieldPoly { level, coeffs }
    }

    pub fn zero(level: u32) -> Self {
        FieldPoly {
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.level(), vec![c])
    }

    pub fn one(field: &ExtField) -> Self {
        Self::constant(field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &ExtField) -> Self {
        Self::new(field.degree(), vec![field.zero(), field.one()])
    }

    /// `x - r`.
    pub fn linear(field: &ExtField, r: &FieldElement) -> Self {
        Self::new(field.degree(), vec![field.neg(r), field.one()])
    }

    /// Polynomial with prime-field coefficients, placed at `field`'s level.
    pub fn from_base(field: &ExtField, coeffs: &[u64]) -> Self {
        Self::new(
            field.degree(),
            coeffs.iter().map(|&c| field.from_u64(c)).collect(),
        )
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &ExtField, roots: &[FieldElement]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, r| acc.mul(&Self::linear(field, r), field))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize, field: &ExtField) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &FieldPoly, f: &ExtField) -> FieldPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f.degree(),
            (0..n).map(|k| f.add(&self.coeff(k, f), &other.coeff(k, f))).collect(),
        )
    }

    pub fn sub(&self, other: &FieldPoly, f: &ExtField) -> FieldPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f.degree(),
            (0..n).map(|k| f.sub(&self.coeff(k, f), &other.coeff(k, f))).collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement, f: &ExtField) -> FieldPoly {
        Self::new(f.degree(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &FieldPoly, f: &ExtField) -> FieldPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.degree());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.degree(), out)
    }

    pub fn div_rem(&self, divisor: &FieldPoly, f: &ExtField) -> Result<(FieldPoly, FieldPoly)> {
        let lead = divisor
            .leading()
            .ok_or_else(|| Error::DivisionByZero("polynomial division by zero".into()))?;
        let li = f.inv(lead)?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(f.degree()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + db], &li);
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Self::new(f.degree(), quot), Self::new(f.degree(), rem)))
    }

    pub fn rem(&self, divisor: &FieldPoly, f: &ExtField) -> Result<FieldPoly> {
        Ok(self.div_rem(divisor, f)?.1)
    }

    pub fn monic(&self, f: &ExtField) -> Result<FieldPoly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&f.inv(l)?, f)),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FieldPoly, f: &ExtField) -> Result<FieldPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: &FieldElement, f: &ExtField) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self, f: &ExtField) -> FieldPoly {
        Self::new(
            f.degree(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| f.scale(c, k as u64))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FieldPoly, f: &ExtField) -> Result<FieldPoly> {
        let base = self.rem(m, f)?;
        let mut acc = Self::one(f).rem(m, f)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, f).rem(m, f)?;
            if e.bit(i) {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
        }
        Ok(acc)
    }

    /// `self(inner) mod m`.
    pub fn compose_mod(&self, inner: &FieldPoly, m: &FieldPoly, f: &ExtField) -> Result<FieldPoly> {
        let inner = inner.rem(m, f)?;
        let mut acc = Self::zero(f.degree());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner, f).add(&Self::constant(c.clone()), f).rem(m, f)?;
        }
        Ok(acc)
    }

    /// Maps every coefficient into level `to`.
    pub fn embed(&self, tower: &FieldTower, to: u32) -> Result<FieldPoly> {
        if self.level == to {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| tower.embed(c, to))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(to, coeffs))
    }

    /// Pulls every coefficient back to level `to`, if possible.
    pub fn descend(&self, tower: &FieldTower, to: u32) -> Result<Option<FieldPoly>> {
        if self.level == to {
            return Ok(Some(self.clone()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match tower.descend(c, to)? {
                Some(d) => coeffs.push(d),
                None => return Ok(None),
            }
        }
        Ok(Some(Self::new(to, coeffs)))
    }
}
