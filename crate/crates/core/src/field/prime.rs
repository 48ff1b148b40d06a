//! Arithmetic in the prime field `F_q` and dense polynomials over it.
//!
//! Values are `u64` residues in `[0, q)`; `q` is assumed below `2^31` so that
//! products fit comfortably in a `u64`.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

#[inline]
pub fn add(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, q: u64) -> u64 {
    a * b % q
}

pub fn pow(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, q);
        }
        a = mul(a, a, q);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q), "inverse of zero");
    pow(a, q - 2, q)
}

/// Reduces a signed integer into `[0, q)`.
pub fn from_i64(v: i64, q: u64) -> u64 {
    v.rem_euclid(q as i64) as u64
}

/// Polynomials over `F_q`, lowest coefficient first, trimmed.
pub type BasePoly = Vec<u64>;

pub fn trim(p: &mut BasePoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn poly_mul(a: &[u64], b: &[u64], q: u64) -> BasePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += (x * y) as u128;
        }
    }
    let mut r: BasePoly = out.into_iter().map(|v| (v % q as u128) as u64).collect();
    trim(&mut r);
    r
}

/// Remainder modulo a nonzero polynomial.
pub fn poly_rem(a: &[u64], m: &[u64], q: u64) -> BasePoly {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], q);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mul(*r.last().unwrap(), lead_inv, q);
        for (i, &d) in m.iter().enumerate() {
            r[k + i] = sub(r[k + i], mul(c, d, q), q);
        }
        trim(&mut r);
    }
    r
}

pub fn poly_sub(a: &[u64], b: &[u64], q: u64) -> BasePoly {
    let n = a.len().max(b.len());
    let mut r: BasePoly = (0..n)
        .map(|i| sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), q))
        .collect();
    trim(&mut r);
    r
}

pub fn poly_gcd(a: &[u64], b: &[u64], q: u64) -> BasePoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv(l, q);
        for c in a.iter_mut() {
            *c = mul(*c, li, q);
        }
    }
    a
}

pub fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], q: u64) -> BasePoly {
    let mut acc = poly_rem(&[1], m, q);
    let mut b = poly_rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, q), m, q);
        }
        e >>= 1;
        if e > 0 {
            b = poly_rem(&poly_mul(&b, &b, q), m, q);
        }
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree `k >= 1`.
pub fn is_irreducible(f: &[u64], q: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    // frob[i] = x^(q^i) mod f
    let x = vec![0, 1];
    let mut frob = vec![poly_rem(&x, f, q)];
    for _ in 0..k {
        let next = poly_powmod(frob.last().unwrap(), q, f, q);
        frob.push(next);
    }
    if poly_rem(&poly_sub(&frob[k], &x, q), f, q) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let d = poly_sub(&frob[k / r as usize], &x, q);
        poly_gcd(f, &d, q).len() == 1
    })
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over `F_q`, comparing coefficients as integers from the constant term up.
pub fn smallest_irreducible(k: usize, q: u64) -> BasePoly {
    assert!(k >= 1);
    if k == 1 {
        return vec![0, 1];
    }
    // digits[0] is the constant term and varies slowest; c0 = 0 is divisible by x.
    let mut digits = vec![0u64; k];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, q) {
            return f;
        }
        let mut i = k - 1;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible polynomial of degree {k}");
            i -= 1;
        }
    }
}
