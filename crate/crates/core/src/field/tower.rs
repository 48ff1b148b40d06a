//! A compatible tower of extensions `F_{q^k}` of a prime field.
//!
//! Level `k` is `F_q[t]/(f_k)` where `f_k` is the lexicographically smallest
//! monic irreducible of degree `k`. Embeddings `F_{q^a} -> F_{q^b}` send `t`
//! to a root of `f_a`, chosen canonically and so that every triangle of
//! embeddings commutes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::prime::{self, BasePoly};
use crate::error::{Error, Result};

/// An element of `F_{q^level}`: coordinates in the power basis of the
/// level's generator, constant coordinate first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    level: u32,
    coords: Vec<u64>,
}

impl FieldElement {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True if the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            return write!(f, "{}", self.coords[0]);
        }
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    level: u32,
    coords: Vec<String>,
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            level: self.level,
            coords: self.coords.iter().map(u64::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        if r.coords.len() != r.level as usize {
            return Err(serde::de::Error::custom("coordinate count must equal level"));
        }
        let coords = r
            .coords
            .iter()
            .map(|s| s.parse::<u64>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(FieldElement { level: r.level, coords })
    }
}

/// One level `F_{q^k}` of the tower.
pub struct ExtField {
    q: u64,
    degree: u32,
    modulus: BasePoly,
    order: BigUint,
    frobenius: OnceLock<Vec<Vec<u64>>>,
    nonresidue: OnceLock<FieldElement>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.q)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtField {
    fn new(q: u64, degree: u32) -> Self {
        let modulus = prime::smallest_irreducible(degree as usize, q);
        ExtField {
            q,
            degree,
            modulus,
            order: BigUint::from(q).pow(degree),
            frobenius: OnceLock::new(),
            nonresidue: OnceLock::new(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic defining polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q^degree`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    fn k(&self) -> usize {
        self.degree as usize
    }

    fn check(&self, a: &FieldElement) {
        debug_assert_eq!(a.level, self.degree, "element from level {} used at level {}", a.level, self.degree);
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            level: self.degree,
            coords: vec![0; self.k()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = v % self.q;
        e
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_u64(prime::from_i64(v, self.q))
    }

    /// Builds an element from coordinates, reducing modulo `q` and the
    /// defining polynomial.
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        let c: BasePoly = coords.iter().map(|&v| v % self.q).collect();
        self.element_of_poly(prime::poly_rem(&c, &self.modulus, self.q))
    }

    fn element_of_poly(&self, mut p: BasePoly) -> FieldElement {
        p.resize(self.k(), 0);
        FieldElement {
            level: self.degree,
            coords: p,
        }
    }

    /// The generator `t` of the power basis.
    pub fn generator(&self) -> FieldElement {
        self.from_coords(&[0, 1])
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.coords[0] == 1 % self.q && a.coords[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            level: self.degree,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| prime::add(x, y, self.q))
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            level: self.degree,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| prime::sub(x, y, self.q))
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        FieldElement {
            level: self.degree,
            coords: a.coords.iter().map(|&x| prime::sub(0, x, self.q)).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let c = c % self.q;
        FieldElement {
            level: self.degree,
            coords: a.coords.iter().map(|&x| prime::mul(x, c, self.q)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let k = self.k();
        let q = self.q;
        if k == 1 {
            return FieldElement {
                level: 1,
                coords: vec![prime::mul(a.coords[0], b.coords[0], q)],
            };
        }
        let mut acc = vec![0u128; 2 * k - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let mut t: Vec<u64> = acc.into_iter().map(|v| (v % q as u128) as u64).collect();
        // reduce by the monic modulus from the top
        for i in (k..2 * k - 1).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            t[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    t[i - k + j] = prime::sub(t[i - k + j], prime::mul(c, m, q), q);
                }
            }
        }
        t.truncate(k);
        FieldElement {
            level: self.degree,
            coords: t,
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero field element".into()));
        }
        let q = self.q;
        // extended Euclid on (modulus, a)
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coords.clone();
        prime::trim(&mut r1);
        let mut s0: BasePoly = Vec::new();
        let mut s1: BasePoly = vec![1];
        while r1.len() > 1 {
            let (quot, rem) = base_divrem(&r0, &r1, q);
            let s2 = prime::poly_sub(&s0, &prime::poly_mul(&quot, &s1, q), q);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        let c = prime::inv(r1[0], q);
        let out: BasePoly = s1.iter().map(|&v| prime::mul(v, c, q)).collect();
        Ok(self.element_of_poly(prime::poly_rem(&out, &self.modulus, q)))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow_u64(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.square(&b);
            }
        }
        acc
    }

    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn frobenius_matrix(&self) -> &Vec<Vec<u64>> {
        self.frobenius.get_or_init(|| {
            // column i = (t^i)^q
            let tq = self.pow_u64(&self.generator(), self.q);
            let mut cols = Vec::with_capacity(self.k());
            let mut cur = self.one();
            for _ in 0..self.k() {
                cols.push(cur.coords.clone());
                cur = self.mul(&cur, &tq);
            }
            cols
        })
    }

    /// `a^(q^power)`.
    pub fn frobenius(&self, a: &FieldElement, power: u32) -> FieldElement {
        self.check(a);
        let power = power % self.degree;
        let q = self.q;
        let cols = self.frobenius_matrix();
        let mut cur = a.coords.clone();
        for _ in 0..power {
            let mut next = vec![0u64; self.k()];
            for (i, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (n, &m) in next.iter_mut().zip(&cols[i]) {
                    *n = prime::add(*n, prime::mul(c, m, q), q);
                }
            }
            cur = next;
        }
        FieldElement {
            level: self.degree,
            coords: cur,
        }
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        if a.is_zero() {
            return true;
        }
        let e = (&self.order - 1u32) >> 1;
        self.is_one(&self.pow(a, &e))
    }

    fn nonresidue(&self) -> &FieldElement {
        self.nonresidue.get_or_init(|| {
            let mut n = 1u64;
            loop {
                let e = self.element_from_index(n);
                if !self.is_square(&e) {
                    return e;
                }
                n += 1;
            }
        })
    }

    /// Element whose coordinates are the base-`q` digits of `n`, constant
    /// coordinate least significant.
    pub fn element_from_index(&self, mut n: u64) -> FieldElement {
        let mut coords = vec![0; self.k()];
        for c in coords.iter_mut() {
            *c = n % self.q;
            n /= self.q;
        }
        FieldElement {
            level: self.degree,
            coords,
        }
    }

    /// Inverse of [`ExtField::element_from_index`].
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coords.iter().rev().fold(0, |acc, &c| acc * self.q + c)
    }

    /// Square root by Tonelli-Shanks; `None` for non-squares. The root
    /// returned is the smaller of the pair in coordinate order.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let mut t: BigUint = &self.order - 1u32;
        let mut s = 0u32;
        while !t.bit(0) {
            t >>= 1;
            s += 1;
        }
        let z = self.nonresidue().clone();
        let mut m = s;
        let mut c = self.pow(&z, &t);
        let mut x = self.pow(a, &((&t + 1u32) >> 1));
        let mut b = self.pow(a, &t);
        while !self.is_one(&b) {
            let mut i = 0;
            let mut b2 = b.clone();
            while !self.is_one(&b2) {
                b2 = self.square(&b2);
                i += 1;
            }
            let mut g = c.clone();
            for _ in 0..(m - i - 1) {
                g = self.square(&g);
            }
            x = self.mul(&x, &g);
            c = self.square(&g);
            b = self.mul(&b, &c);
            m = i;
        }
        let other = self.neg(&x);
        Some(if other < x { other } else { x })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement {
            level: self.degree,
            coords: (0..self.k()).map(|_| rng.gen_range(0..self.q)).collect(),
        }
    }

    /// Every element, in index order. Only sensible for tiny fields.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + '_ {
        let n = self.q.pow(self.degree) as usize;
        (0..n).map(move |i| self.element_from_index(i as u64))
    }
}

fn base_divrem(a: &[u64], b: &[u64], q: u64) -> (BasePoly, BasePoly) {
    let mut r = a.to_vec();
    prime::trim(&mut r);
    let db = b.len() - 1;
    let li = prime::inv(b[db], q);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = prime::mul(*r.last().unwrap(), li, q);
        quot[k] = c;
        for (i, &d) in b.iter().enumerate() {
            r[k + i] = prime::sub(r[k + i], prime::mul(c, d, q), q);
        }
        prime::trim(&mut r);
    }
    prime::trim(&mut quot);
    (quot, r)
}

/// A field embedding `F_{q^from} -> F_{q^to}`, stored as the F_q-linear map on
/// coordinates together with a left inverse for descent.
#[derive(Debug)]
pub struct Embedding {
    from: u32,
    to: u32,
    generator_image: FieldElement,
    columns: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<u64>>,
}

impl Embedding {
    fn new(q: u64, from: u32, target: &ExtField, generator_image: FieldElement) -> Self {
        let a = from as usize;
        let mut columns = Vec::with_capacity(a);
        let mut cur = target.one();
        for _ in 0..a {
            columns.push(cur.coords.clone());
            cur = target.mul(&cur, &generator_image);
        }
        let (pivots, inverse) = left_inverse(&columns, q);
        Embedding {
            from,
            to: target.degree,
            generator_image,
            columns,
            pivots,
            inverse,
        }
    }

    pub fn from_level(&self) -> u32 {
        self.from
    }

    pub fn to_level(&self) -> u32 {
        self.to
    }

    /// Image of the source level's generator.
    pub fn generator_image(&self) -> &FieldElement {
        &self.generator_image
    }

    pub fn apply(&self, x: &FieldElement, q: u64) -> FieldElement {
        debug_assert_eq!(x.level, self.from);
        let mut out = vec![0u64; self.to as usize];
        for (i, &c) in x.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&self.columns[i]) {
                *o = prime::add(*o, prime::mul(c, m, q), q);
            }
        }
        FieldElement {
            level: self.to,
            coords: out,
        }
    }

    /// Preimage of `y`, if it lies in the image.
    pub fn descend(&self, y: &FieldElement, q: u64) -> Option<FieldElement> {
        debug_assert_eq!(y.level, self.to);
        let a = self.from as usize;
        let coords: Vec<u64> = (0..a)
            .map(|i| {
                self.pivots.iter().enumerate().fold(0, |acc, (j, &row)| {
                    prime::add(acc, prime::mul(self.inverse[i][j], y.coords[row], q), q)
                })
            })
            .collect();
        let x = FieldElement {
            level: self.from,
            coords,
        };
        (self.apply(&x, q) == *y).then_some(x)
    }
}

/// Given `a` column vectors of length `b` spanning an `a`-dimensional space,
/// picks `a` independent row positions and returns the inverse of the square
/// submatrix on those rows.
fn left_inverse(columns: &[Vec<u64>], q: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let a = columns.len();
    let b = columns.first().map_or(0, Vec::len);
    // rows of the transposed system: work on a copy of columns as rows
    let mut m: Vec<Vec<u64>> = columns.to_vec();
    let mut pivots = Vec::with_capacity(a);
    let mut r = 0;
    for pos in 0..b {
        if r == a {
            break;
        }
        let Some(sel) = (r..a).find(|&i| m[i][pos] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let inv = prime::inv(m[r][pos], q);
        for v in m[r].iter_mut() {
            *v = prime::mul(*v, inv, q);
        }
        for i in 0..a {
            if i != r && m[i][pos] != 0 {
                let f = m[i][pos];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x = prime::sub(*x, prime::mul(f, y, q), q);
                }
            }
        }
        pivots.push(pos);
        r += 1;
    }
    assert_eq!(pivots.len(), a, "embedding is not injective");
    // S[j][i] = columns[i][pivots[j]]; invert S.
    let mut aug: Vec<Vec<u64>> = (0..a)
        .map(|j| {
            let mut row: Vec<u64> = (0..a).map(|i| columns[i][pivots[j]]).collect();
            row.extend((0..a).map(|k| u64::from(k == j)));
            row
        })
        .collect();
    for col in 0..a {
        let sel = (col..a).find(|&i| aug[i][col] != 0).expect("invertible");
        aug.swap(col, sel);
        let inv = prime::inv(aug[col][col], q);
        for v in aug[col].iter_mut() {
            *v = prime::mul(*v, inv, q);
        }
        for i in 0..a {
            if i != col && aug[i][col] != 0 {
                let f = aug[i][col];
                let row = aug[col].clone();
                for (x, y) in aug[i].iter_mut().zip(row) {
                    *x = prime::sub(*x, prime::mul(f, y, q), q);
                }
            }
        }
    }
    let inverse = aug.into_iter().map(|row| row[a..].to_vec()).collect();
    (pivots, inverse)
}

/// Lazily built tower of extensions of `F_q` with compatible embeddings.
///
/// Construction is deterministic: the same levels and embeddings come out no
/// matter in which order they are requested.
pub struct FieldTower {
    q: u64,
    seed: u64,
    levels: RwLock<BTreeMap<u32, Arc<ExtField>>>,
    embeddings: RwLock<BTreeMap<(u32, u32), Arc<Embedding>>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("q", &self.q)
            .field("levels", &self.levels.read().unwrap().keys().collect::<Vec<_>>())
            .finish()
    }
}

impl FieldTower {
    /// A tower over `F_q`; `seed` drives the randomized root splitting.
    pub fn new(q: u64, seed: u64) -> Result<Self> {
        if !prime::is_prime(q) || q == 2 || q >= 1 << 31 {
            return Err(Error::Precondition(format!(
                "field characteristic must be an odd prime below 2^31, got {q}"
            )));
        }
        Ok(FieldTower {
            q,
            seed,
            levels: RwLock::new(BTreeMap::new()),
            embeddings: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The level `F_{q^k}`, building its defining polynomial on first use.
    pub fn level(&self, k: u32) -> Arc<ExtField> {
        assert!(k >= 1, "extension degree must be positive");
        if let Some(f) = self.levels.read().unwrap().get(&k) {
            return f.clone();
        }
        let field = Arc::new(ExtField::new(self.q, k));
        self.levels
            .write()
            .unwrap()
            .entry(k)
            .or_insert(field)
            .clone()
    }

    /// Defining polynomials of all levels built so far.
    pub fn defining_polynomials(&self) -> BTreeMap<u32, Vec<u64>> {
        self.levels
            .read()
            .unwrap()
            .iter()
            .map(|(&k, f)| (k, f.modulus.clone()))
            .collect()
    }

    pub fn embedding(&self, from: u32, to: u32) -> Result<Arc<Embedding>> {
        if from == 0 || !to.is_multiple_of(from) {
            return Err(Error::Precondition(format!(
                "no embedding of level {from} into level {to}"
            )));
        }
        if let Some(e) = self.embeddings.read().unwrap().get(&(from, to)) {
            return Ok(e.clone());
        }
        let built = self.build_embeddings_into(to)?;
        let mut map = self.embeddings.write().unwrap();
        for (a, e) in built {
            map.entry((a, to)).or_insert(e);
        }
        Ok(map.get(&(from, to)).expect("built above").clone())
    }

    fn build_embeddings_into(&self, c: u32) -> Result<Vec<(u32, Arc<Embedding>)>> {
        let target = self.level(c);
        let mut out: Vec<(u32, Arc<Embedding>)> = Vec::new();
        out.push((c, Arc::new(Embedding::new(self.q, c, &target, target.generator()))));
        if c == 1 {
            return Ok(out);
        }
        let maximal: Vec<u32> = prime::prime_factors(c as u64)
            .into_iter()
            .map(|r| c / r as u32)
            .rev()
            .collect();
        let mut chosen: Vec<(u32, Arc<Embedding>)> = Vec::new();
        for &b in &maximal {
            let image = if b == 1 {
                target.zero()
            } else {
                let src = self.level(b);
                let f = super::poly::FieldPoly::from_base(&self.level(1), src.modulus());
                let roots = super::roots::distinct_roots(self, &f, c)?;
                let mut found = None;
                for r in roots {
                    let cand = Embedding::new(self.q, b, &target, r);
                    let mut ok = true;
                    for (b2, e2) in &chosen {
                        let g = gcd(b, *b2);
                        if g == 1 {
                            continue;
                        }
                        let gen_g = self.level(g).generator();
                        let via_b = cand.apply(&self.embedding(g, b)?.apply(&gen_g, self.q), self.q);
                        let via_b2 = e2.apply(&self.embedding(g, *b2)?.apply(&gen_g, self.q), self.q);
                        if via_b != via_b2 {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        found = Some(cand);
                        break;
                    }
                }
                found
                    .ok_or_else(|| Error::Internal(format!("no compatible embedding {b} -> {c}")))?
                    .generator_image
                    .clone()
            };
            chosen.push((b, Arc::new(Embedding::new(self.q, b, &target, image))));
        }
        // every other proper divisor factors through the first maximal
        // divisor containing it
        for a in 1..c {
            if !c.is_multiple_of(a) {
                continue;
            }
            if let Some((_, e)) = chosen.iter().find(|(b, _)| *b == a) {
                out.push((a, e.clone()));
                continue;
            }
            let (b, eb) = chosen
                .iter()
                .find(|(b, _)| b % a == 0)
                .expect("some maximal divisor contains a");
            let inner = self.embedding(a, *b)?;
            let image = eb.apply(inner.generator_image(), self.q);
            out.push((a, Arc::new(Embedding::new(self.q, a, &target, image))));
        }
        Ok(out)
    }

    /// Maps `x` into level `to`.
    pub fn embed(&self, x: &FieldElement, to: u32) -> Result<FieldElement> {
        if x.level == to {
            return Ok(x.clone());
        }
        if x.level == 1 {
            return Ok(self.level(to).from_u64(x.coords[0]));
        }
        Ok(self.embedding(x.level, to)?.apply(x, self.q))
    }

    /// Pulls `x` back to level `to`, if it lies in that subfield.
    pub fn descend(&self, x: &FieldElement, to: u32) -> Result<Option<FieldElement>> {
        if x.level == to {
            return Ok(Some(x.clone()));
        }
        if to == 1 {
            return Ok(x.is_prime_field().then(|| self.level(1).from_u64(x.coords[0])));
        }
        Ok(self.embedding(to, x.level)?.descend(x, self.q))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
