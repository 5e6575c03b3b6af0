//! Ground truth: the three functions evaluated straight from their definitions.

use std::collections::BTreeSet;

use crate::card::InputVector;

/// 1 if every input is the same value, 0 otherwise.
pub fn oracle_equality(inputs: &InputVector) -> u8 {
    let v = inputs.values();
    u8::from(v.iter().all(|&a| a == v[0]))
}

/// The set of values chosen by at least one player.
pub fn oracle_set(inputs: &InputVector) -> BTreeSet<usize> {
    inputs.values().iter().copied().collect()
}

pub fn oracle_set_size(inputs: &InputVector) -> usize {
    oracle_set(inputs).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[usize], k: usize) -> InputVector {
        InputVector::new(v.to_vec(), k).unwrap()
    }

    #[test]
    fn equality_examples() {
        assert_eq!(oracle_equality(&iv(&[2, 3, 2, 0, 2], 6)), 0);
        assert_eq!(oracle_equality(&iv(&[7, 7, 7], 8)), 1);
        assert_eq!(oracle_equality(&iv(&[5], 6)), 1);
    }

    #[test]
    fn set_examples() {
        let x = iv(&[3, 2, 3, 0, 5, 0], 6);
        assert_eq!(oracle_set(&x), BTreeSet::from([0, 2, 3, 5]));
        assert_eq!(oracle_set_size(&x), 4);
        assert_eq!(oracle_set(&iv(&[4, 4, 4, 4], 5)), BTreeSet::from([4]));
        assert_eq!(oracle_set_size(&iv(&[4, 4, 4, 4], 5)), 1);
        assert_eq!(oracle_set(&iv(&[0, 1, 2], 3)), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn set_size_one_iff_equal() {
        for x in InputVector::all(3, 3) {
            assert_eq!(oracle_set_size(&x) == 1, oracle_equality(&x) == 1, "{x}");
        }
    }

    #[test]
    fn set_size_bounds() {
        for (k, n) in [(2, 4), (3, 3), (4, 2), (5, 3)] {
            for x in InputVector::all(k, n) {
                let s = oracle_set(&x);
                assert!(s.iter().all(|&j| j < k));
                assert!((1..=n.min(k)).contains(&s.len()));
            }
        }
    }
}
