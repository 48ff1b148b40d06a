use num_integer::Integer;

/// The projective line `P¹(Z/M)`: pairs `(c, d)` with `gcd(c, d, M) = 1`
/// modulo scaling by units. Each class is represented by the smallest pair
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct P1List {
    m: u64,
    reps: Vec<(u64, u64)>,
    lookup: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl P1List {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "level must be positive");
        let size = (m * m) as usize;
        let units: Vec<u64> = (1..=m).filter(|u| u.gcd(&m) == 1).map(|u| u % m).collect();
        let mut lookup = vec![NONE; size];
        let mut reps = Vec::new();
        for c in 0..m {
            for d in 0..m {
                let slot = (c * m + d) as usize;
                if lookup[slot] != NONE || c.gcd(&d).gcd(&m) != 1 {
                    continue;
                }
                let idx = reps.len() as u32;
                reps.push((c, d));
                for &u in &units {
                    lookup[((u * c % m) * m + u * d % m) as usize] = idx;
                }
            }
        }
        P1List { m, reps, lookup }
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    pub fn reps(&self) -> &[(u64, u64)] {
        &self.reps
    }

    /// Index of the class of `(c : d)`, if the pair lies in `P¹(Z/M)`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let m = self.m as i64;
        let (c, d) = (c.rem_euclid(m) as u64, d.rem_euclid(m) as u64);
        match self.lookup[(c * self.m + d) as usize] {
            NONE => None,
            i => Some(i as usize),
        }
    }
}

/// Canonical representatives of `P¹(Z/M)`.
pub fn p1_list(m: u64) -> Vec<(u64, u64)> {
    P1List::new(m).reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::psi;

    #[test]
    fn small_levels() {
        assert_eq!(p1_list(1), vec![(0, 0)]);
        assert_eq!(p1_list(2), vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(p1_list(13).len(), 14);
    }

    #[test]
    fn sizes_match_psi() {
        for m in 1..=60 {
            assert_eq!(p1_list(m).len() as u64, psi(m), "M = {m}");
        }
    }

    #[test]
    fn lookup_is_scaling_invariant() {
        let p = P1List::new(12);
        for (i, &(c, d)) in p.reps().iter().enumerate() {
            for u in [1i64, 5, 7, 11, -1] {
                assert_eq!(p.index(u * c as i64, u * d as i64), Some(i));
            }
        }
        assert_eq!(p.index(2, 4), None);
    }
}
