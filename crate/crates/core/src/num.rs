//! Scalar types for probabilities.
//!
//! Exact audits work in `Ratio<u64>` so verdicts never touch floating point; sampled audits use
//! `f64`. Distribution queries are generic over [`Probability`] so either can be requested.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::Num;

pub trait Probability: Num + Clone + PartialOrd + Debug {
    /// `count / total`.
    fn from_counts(count: u64, total: u64) -> Self;

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl Probability for Ratio<u64> {
    fn from_counts(count: u64, total: u64) -> Self {
        Ratio::new(count, total)
    }
}

impl Probability for Ratio<u128> {
    fn from_counts(count: u64, total: u64) -> Self {
        Ratio::new(u128::from(count), u128::from(total))
    }
}

impl Probability for f64 {
    fn from_counts(count: u64, total: u64) -> Self {
        count as f64 / total as f64
    }
}

impl Probability for f32 {
    fn from_counts(count: u64, total: u64) -> Self {
        (count as f64 / total as f64) as f32
    }
}

/// Total-variation distance `½ Σ |p_i − q_i|` between two probability vectors over the same
/// support. Missing entries count as zero.
pub fn total_variation<P: Probability>(p: &[P], q: &[P]) -> P {
    let len = p.len().max(q.len());
    let zero = P::zero();
    let sum = (0..len).fold(P::zero(), |acc, i| {
        let a = p.get(i).unwrap_or(&zero);
        let b = q.get(i).unwrap_or(&zero);
        acc + a.abs_diff(b)
    });
    sum / (P::one() + P::one())
}
