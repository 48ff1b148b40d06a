use serde::{Deserialize, Serialize};

use crate::arith::{bass_determinant, poly_exact_div, IntPolynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::modsym::ManinSpace;

/// `W(X₀(M), S) = Π(1 - λ_i S + pS²) / ((1-S)(1-pS))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseWeilZeta {
    pub level: u64,
    pub p: u64,
    pub numerator_charpoly_factor: IntPolynomial,
    pub value: RationalFunction,
}

/// `(1-S)(1-pS)`.
pub fn trivial_factor(p: u64) -> IntPolynomial {
    &IntPolynomial::from_i64s(&[1, -1]) * &IntPolynomial::from_i64s(&[1, -(p as i64)])
}

/// Hasse–Weil zeta of `X₀(M)` over `F_p` from a prepared modular-symbols space.
pub fn hasse_weil_from(space: &ManinSpace, p: u64) -> Result<HasseWeilZeta> {
    let m = space.level();
    if m.is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} divides the level {m}")));
    }
    let numerator = bass_determinant(&space.hecke_charpoly(p)?, &p.into())?;
    let value = RationalFunction::new(numerator.clone(), trivial_factor(p))?;
    Ok(HasseWeilZeta {
        level: m,
        p,
        numerator_charpoly_factor: numerator,
        value,
    })
}

pub fn hasse_weil(m: u64, p: u64) -> Result<HasseWeilZeta> {
    if m.is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} divides the level {m}")));
    }
    hasse_weil_from(&ManinSpace::new(m)?, p)
}

/// `Π(1 - a_p S + pS²)` over the q-new eigenforms of level `qN`, isolated by
/// exact division of the level-`qN` numerator by the square of the level-`N`
/// numerator.
pub fn q_new_factor_from(at_qn: &HasseWeilZeta, at_n: &HasseWeilZeta) -> Result<IntPolynomial> {
    let old = &at_n.numerator_charpoly_factor;
    let once = poly_exact_div(&at_qn.numerator_charpoly_factor, old)?;
    poly_exact_div(&once, old)
}

pub fn q_new_factor(q: u64, n: u64, p: u64) -> Result<IntPolynomial> {
    if n.is_multiple_of(q) || (q * n).is_multiple_of(p) {
        return Err(Error::Precondition("need gcd(p, qN) = 1 and q ∤ N".into()));
    }
    q_new_factor_from(&hasse_weil(q * n, p)?, &hasse_weil(n, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_and_genus_zero() {
        for m in [1u64, 13] {
            let w = hasse_weil(m, 2).unwrap();
            assert_eq!(w.value, RationalFunction::new(IntPolynomial::one(), trivial_factor(2)).unwrap());
        }
    }

    #[test]
    fn level_thirty_seven() {
        let w = hasse_weil(37, 2).unwrap();
        let want = &IntPolynomial::from_i64s(&[1, 2, 2]) * &IntPolynomial::from_i64s(&[1, 0, 2]);
        assert_eq!(w.numerator_charpoly_factor, want);
        assert_eq!(q_new_factor(37, 1, 2).unwrap(), want);
        assert_eq!(q_new_factor(13, 1, 2).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn q_new_degree_and_constant_term() {
        use crate::modsym::genus;
        for (q, n, p) in [(13u64, 2u64, 3u64), (13, 3, 5), (37, 2, 3), (13, 11, 2)] {
            let f = q_new_factor(q, n, p).unwrap();
            assert_eq!(f.coeff(0), 1.into());
            let deg = 2 * (genus(q * n) - 2 * genus(n)) as usize;
            assert_eq!(f.degree().finite().unwrap_or(0), deg);
        }
    }

    #[test]
    fn bad_prime() {
        assert!(matches!(hasse_weil(37, 37), Err(Error::Precondition(_))));
    }
}
