//! Exact real-root counting with Sturm sequences, including evaluation at
//! quadratic irrationalities `±sqrt(d)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::IntPolynomial;

type QPoly = Vec<BigRational>;

fn to_q(f: &IntPolynomial) -> QPoly {
    f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone() / &lead;
        for (i, d) in b.iter().enumerate() {
            r[k + i] -= &c * d;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Squarefree part `f / gcd(f, f')`, primitive.
pub fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    if f.degree().finite().unwrap_or(0) == 0 {
        return f.primitive_part();
    }
    let g = f.gcd(&f.derivative());
    f.primitive_part().exact_div(&g).expect("gcd divides").primitive_part()
}

fn sturm_chain(f: &IntPolynomial) -> Vec<QPoly> {
    let p0 = to_q(f);
    let mut p1 = to_q(&f.derivative());
    trim(&mut p1);
    let mut chain = vec![p0];
    if p1.is_empty() {
        return chain;
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let mut r = q_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_infinity(p: &QPoly, negative: bool) -> Ordering {
    let lead = p.last().expect("nonzero chain entry");
    let s = if lead.is_positive() { Ordering::Greater } else { Ordering::Less };
    if negative && (p.len() - 1) % 2 == 1 {
        s.reverse()
    } else {
        s
    }
}

/// Sign of `a + b*sqrt(d)` for `d > 0`.
fn sign_quadratic(a: &BigRational, b: &BigRational, d: &BigInt) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `p(s * sqrt(d))` with `s = ±1`.
fn sign_at_sqrt(p: &QPoly, d: &BigInt, s: i32) -> Ordering {
    let dq = BigRational::from_integer(d.clone());
    let root_coeff = BigRational::from_integer(BigInt::from(s));
    // Horner in Q(sqrt d): (a + b r)(0 + s r) = s*b*d + s*a r
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.iter().rev() {
        let na = &b * &root_coeff * &dq + c;
        let nb = &a * &root_coeff;
        a = na;
        b = nb;
    }
    sign_quadratic(&a, &b, d)
}

/// Number of distinct real roots of `f`.
pub fn count_distinct_real_roots(f: &IntPolynomial) -> usize {
    if f.degree().finite().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    let neg = variations(chain.iter().map(|p| sign_at_infinity(p, true)));
    let pos = variations(chain.iter().map(|p| sign_at_infinity(p, false)));
    neg - pos
}

/// Number of distinct real roots of `f` in the closed interval
/// `[-sqrt(d), sqrt(d)]`, for `d > 0`.
pub fn count_roots_within_sqrt(f: &IntPolynomial, d: &BigInt) -> usize {
    if f.degree().finite().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    let lo = variations(chain.iter().map(|p| sign_at_sqrt(p, d, -1)));
    let hi = variations(chain.iter().map(|p| sign_at_sqrt(p, d, 1)));
    let at_lo = sign_at_sqrt(&chain[0], d, -1) == Ordering::Equal;
    lo - hi + usize::from(at_lo)
}

/// True when every complex root of `f` is real with absolute value at most
/// `sqrt(d)`.
pub fn all_roots_real_within_sqrt(f: &IntPolynomial, d: &BigInt) -> bool {
    let sf = squarefree_part(f);
    let n = sf.degree().finite().unwrap_or(0);
    n == 0 || count_roots_within_sqrt(&sf, d) == n
}
