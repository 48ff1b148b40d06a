//! Independent oracles shared by the integration tests. None of these go
//! through the library's field tower, root finding or modular symbols.
#![allow(dead_code)]

use isozeta::arith::IntPolynomial;

/// Affine solutions of a general Weierstrass equation
/// `y² + a1xy + a3y = x³ + a2x² + a4x + a6` over `F_p`, plus the point at
/// infinity.
pub fn count_points(coeffs: [i64; 5], p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = coeffs.map(|c| c.rem_euclid(p));
    let mut n = 1;
    for x in 0..p {
        let rhs = (((x * x % p) * x) % p + a2 * x % p * x % p + a4 * x + a6) % p;
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// `a_p = p + 1 - #E(F_p)`.
pub fn trace_of_frobenius(coeffs: [i64; 5], p: i64) -> i64 {
    p + 1 - count_points(coeffs, p)
}

/// Cremona 11a1.
pub const E11A: [i64; 5] = [0, -1, 1, -10, -20];
/// Cremona 37a1.
pub const E37A: [i64; 5] = [0, 0, 1, -1, 0];
/// Cremona 37b1.
pub const E37B: [i64; 5] = [0, 1, 1, -23, -50];

/// `Π (x - a_ℓ(E))` over the given curves.
pub fn charpoly_from_curves(curves: &[[i64; 5]], l: i64) -> IntPolynomial {
    curves.iter().fold(IntPolynomial::one(), |acc, e| {
        &acc * &IntPolynomial::from_i64s(&[-trace_of_frobenius(*e, l), 1])
    })
}

/// Minimal `F_{q²} = F_q(√n)` arithmetic, `n` the least non-residue.
#[derive(Clone, Copy)]
pub struct Fq2 {
    pub q: i64,
    pub n: i64,
}

impl Fq2 {
    pub fn new(q: i64) -> Self {
        let n = (2..q).find(|&a| pow_mod(a, (q - 1) / 2, q) == q - 1).unwrap();
        Fq2 { q, n }
    }

    pub fn mul(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        let q = self.q;
        ((a.0 * b.0 + a.1 * b.1 % q * self.n) % q, (a.0 * b.1 + a.1 * b.0) % q)
    }

    pub fn add(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        ((a.0 + b.0) % self.q, (a.1 + b.1) % self.q)
    }

    pub fn scalar(&self, c: i64) -> (i64, i64) {
        (c.rem_euclid(self.q), 0)
    }

    pub fn index(&self, a: (i64, i64)) -> usize {
        (a.0 * self.q + a.1) as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = (i64, i64)> {
        let q = self.q;
        (0..q).flat_map(move |a| (0..q).map(move |b| (a, b)))
    }

    /// `(a + a^q, a · a^q)`, the coefficients of the minimal polynomial.
    pub fn trace_norm(&self, a: (i64, i64)) -> (i64, i64) {
        let q = self.q;
        let conj = (a.0, (q - a.1) % q);
        let norm = self.mul(a, conj);
        ((2 * a.0) % q, norm.0)
    }
}

pub fn pow_mod(mut a: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1;
    a = a.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    r
}

/// Supersingular j-invariants by counting points on `y² = x³ + ax + b`,
/// `a = 3j(1728-j)`, `b = 2j(1728-j)²`, over `F_{q²}`, reported as sorted
/// (trace, norm) pairs so they can be compared across field presentations.
/// Conjugate invariants give curves with equal counts, so only one of each
/// pair is counted.
pub fn supersingular_by_point_count(q: i64) -> Vec<(i64, i64)> {
    let f = Fq2::new(q);
    let size = (q * q) as usize;
    let mut square = vec![false; size];
    for y in f.elements() {
        square[f.index(f.mul(y, y))] = true;
    }
    let xs: Vec<(i64, i64)> = f.elements().collect();
    let cubes: Vec<(i64, i64)> = xs.iter().map(|&x| f.mul(f.mul(x, x), x)).collect();
    let mut out = Vec::new();
    for j in f.elements() {
        let conj = (j.0, (q - j.1) % q);
        if conj < j {
            continue;
        }
        let c = f.add(f.scalar(1728), f.mul(f.scalar(-1), j));
        if j == (0, 0) || c == (0, 0) {
            continue;
        }
        let k = f.mul(j, c);
        let a = f.mul(f.scalar(3), k);
        let b = f.mul(f.scalar(2), f.mul(k, c));
        let mut count = 1i64;
        for (x, x3) in xs.iter().zip(&cubes) {
            let v = f.add(f.add(*x3, f.mul(a, *x)), b);
            if v == (0, 0) {
                count += 1;
            } else if square[f.index(v)] {
                count += 2;
            }
        }
        let trace = q * q + 1 - count;
        if trace.rem_euclid(q) == 0 {
            out.push(f.trace_norm(j));
            if conj != j {
                out.push(f.trace_norm(conj));
            }
        }
    }
    out.sort();
    out
}

/// Leibniz determinant over `i128`, for small matrices.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i128>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]]).product();
        *total += if inversions % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Trial-division factorization.
pub fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Number of cyclic subgroups of order `n` in `(Z/n)²`, by enumerating
/// elements of exact order `n` and dividing by `φ(n)`.
pub fn cyclic_subgroup_count(n: u64) -> u64 {
    let exact = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| (1..n).all(|k| (k * a) % n != 0 || (k * b) % n != 0))
        .count() as u64;
    let phi = (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64;
    exact / phi
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Genus of `X₀(M)` from the Riemann–Hurwitz count, computed here without
/// the library: index, elliptic points of orders 2 and 3 by counting
/// solutions of `x² + 1 ≡ 0` and `x² + x + 1 ≡ 0 (mod M)`, and cusps as
/// `Σ_{d | M} φ(gcd(d, M/d))`.
pub fn genus_oracle(m: u64) -> i64 {
    let index = (m * primes_dividing(m).iter().map(|p| p + 1).product::<u64>()
        / primes_dividing(m).iter().product::<u64>()) as i64;
    let nu2 = (0..m).filter(|x| (x * x + 1) % m == 0).count() as i64;
    let nu3 = (0..m).filter(|x| (x * x + x + 1) % m == 0).count() as i64;
    let phi = |n: u64| (1..=n).filter(|k| gcd(*k, n) == 1).count() as i64;
    let cusps: i64 = (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| phi(gcd(d, m / d))).sum();
    let twelve_g = 12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert_eq!(twelve_g % 12, 0);
    twelve_g / 12
}
