use serde::{Deserialize, Serialize};

use super::LevelGraph;
use crate::arith::{bass_determinant, charpoly, IntPolynomial};
use crate::error::Result;

/// Ihara zeta of a `(p+1)`-regular graph, kept as the pair
/// `(2χ, det(I - BS + pS²I))` so that `χ` may be a half-integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IharaZeta {
    pub denominator: IntPolynomial,
    pub euler_char_times_2: i64,
}

pub fn ihara_zeta(g: &LevelGraph) -> Result<IharaZeta> {
    let chi = charpoly(&g.brandt)?;
    Ok(IharaZeta {
        denominator: bass_determinant(&chi, &g.p.into())?,
        euler_char_times_2: g.euler_char_times_2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    #[test]
    fn worked_one_vertex_case() {
        let tower = FieldTower::new(13, 0).unwrap();
        let g = LevelGraph::build(&tower, 2, 1).unwrap();
        let z = ihara_zeta(&g).unwrap();
        assert_eq!(z.denominator, IntPolynomial::from_i64s(&[1, -3, 2]));
        assert_eq!(z.euler_char_times_2, -1);
        let g = LevelGraph::build(&tower, 3, 1).unwrap();
        assert_eq!(ihara_zeta(&g).unwrap().euler_char_times_2, -2);
    }

    #[test]
    fn chi_for_trivial_level() {
        let tower = FieldTower::new(37, 0).unwrap();
        for p in [2u64, 5] {
            let g = LevelGraph::build(&tower, p, 1).unwrap();
            let z = ihara_zeta(&g).unwrap();
            assert_eq!(z.euler_char_times_2, -3 * (p as i64 - 1));
            assert_eq!(z.denominator.coeff(0), 1.into());
        }
    }
}
