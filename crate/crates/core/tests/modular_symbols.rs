mod common;

use common::{charpoly_from_curves, trace_of_frobenius, E11A, E37A, E37B};
use isozeta::arith::sturm::all_roots_real_within_sqrt;
use isozeta::arith::IntPolynomial;
use isozeta::modsym::{genus, hecke_charpoly, ManinSpace};

#[test]
fn oracle_traces_match_known_values() {
    assert_eq!(trace_of_frobenius(E11A, 2), -2);
    assert_eq!(trace_of_frobenius(E37A, 2), -2);
    assert_eq!(trace_of_frobenius(E37A, 3), -3);
    assert_eq!(trace_of_frobenius(E37B, 2), 0);
}

#[test]
fn level_eleven_eigenvalues() {
    let space = ManinSpace::new(11).unwrap();
    for l in [2u64, 3, 5, 7, 13] {
        assert_eq!(space.hecke_charpoly(l).unwrap(), charpoly_from_curves(&[E11A], l as i64), "ℓ = {l}");
    }
}

#[test]
fn level_thirty_seven_eigenvalues() {
    assert_eq!(hecke_charpoly(37, 2).unwrap(), IntPolynomial::from_i64s(&[0, 2, 1]));
    let space = ManinSpace::new(37).unwrap();
    for l in [2u64, 3, 5, 7, 11] {
        assert_eq!(
            space.hecke_charpoly(l).unwrap(),
            charpoly_from_curves(&[E37A, E37B], l as i64),
            "ℓ = {l}"
        );
    }
}

#[test]
fn hecke_operators_commute() {
    for m in [37u64, 61, 74] {
        let space = ManinSpace::new(m).unwrap();
        let t2 = space.hecke_matrix(3).unwrap().matrix;
        let t3 = space.hecke_matrix(5).unwrap().matrix;
        assert_eq!(t2.mul(&t3).unwrap(), t3.mul(&t2).unwrap(), "M = {m}");
    }
}

#[test]
fn full_cuspidal_charpoly_is_the_square() {
    for m in [11u64, 23, 37, 39, 43, 61] {
        let space = ManinSpace::new(m).unwrap();
        for l in [2u64, 5] {
            if m % l == 0 {
                continue;
            }
            let plus = space.hecke_charpoly(l).unwrap();
            let full = space.hecke_matrix_cuspidal(l).unwrap().matrix.integer_charpoly().unwrap();
            assert_eq!(full, &plus * &plus, "M = {m}, ℓ = {l}");
        }
    }
}

#[test]
fn degrees_and_ramanujan_bound() {
    for m in [26u64, 37, 61, 74, 111, 122] {
        let space = ManinSpace::new(m).unwrap();
        space.check_dimension().unwrap();
        for l in [3u64, 5, 7] {
            if m % l == 0 {
                continue;
            }
            let chi = space.hecke_charpoly(l).unwrap();
            assert_eq!(chi.degree().finite(), Some(genus(m) as usize));
            assert!(all_roots_real_within_sqrt(&chi, &(4 * l).into()), "M = {m}, ℓ = {l}");
        }
    }
}
