use num_integer::Integer;
use num_rational::Ratio;

use crate::elliptic::psi;
use crate::field::prime::prime_factors;

fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// Number of elliptic points of order 2 on `X₀(M)`.
pub fn elliptic_points_2(m: u64) -> u64 {
    if m.is_multiple_of(4) {
        return 0;
    }
    prime_factors(m)
        .into_iter()
        .map(|p| match p % 4 {
            1 => 2,
            3 => 0,
            _ => 1,
        })
        .product()
}

/// Number of elliptic points of order 3 on `X₀(M)`.
pub fn elliptic_points_3(m: u64) -> u64 {
    if m.is_multiple_of(9) {
        return 0;
    }
    prime_factors(m)
        .into_iter()
        .map(|p| match p % 3 {
            1 => 2,
            2 => 0,
            _ => 1,
        })
        .product()
}

/// Number of cusps of `X₀(M)`.
pub fn cusp_count(m: u64) -> u64 {
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| euler_phi(d.gcd(&(m / d))))
        .sum()
}

/// Genus of `X₀(M)`: `1 + μ/12 - ν₂/4 - ν₃/3 - ν∞/2`.
pub fn genus(m: u64) -> u64 {
    let g = Ratio::from_integer(1i64) + Ratio::new(psi(m) as i64, 12)
        - Ratio::new(elliptic_points_2(m) as i64, 4)
        - Ratio::new(elliptic_points_3(m) as i64, 3)
        - Ratio::new(cusp_count(m) as i64, 2);
    assert!(g.is_integer() && g >= Ratio::from_integer(0), "genus formula gave {g}");
    g.to_integer() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_genera() {
        let genus0 = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];
        let genus1 = [11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49];
        let genus2 = [22, 23, 26, 28, 29, 31, 37, 50];
        for m in 1..=50 {
            let want = if genus0.contains(&m) {
                0
            } else if genus1.contains(&m) {
                1
            } else if genus2.contains(&m) {
                2
            } else {
                assert!(genus(m) > 2, "M = {m}");
                continue;
            };
            assert_eq!(genus(m), want, "M = {m}");
        }
        assert_eq!(genus(389), 32);
    }
}
