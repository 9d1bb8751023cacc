//! Deterministic floating-point reductions.
//!
//! Every sum that feeds a reported number goes through [`pairwise_sum`], so
//! results do not depend on thread scheduling or on how a caller happened to
//! chunk the data.

/// Pairwise (cascade) summation over a slice.
///
/// Deterministic for a fixed input order and more accurate than a naive
/// left-to-right fold: rounding error grows like O(log n) instead of O(n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Maximum of a slice, ignoring nothing; empty input gives `f64::NEG_INFINITY`.
pub fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_sum_on_small_input() {
        let xs: Vec<f64> = (1..=100).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[3.5]), 3.5);
        assert_eq!(max_of(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn deterministic_across_calls() {
        let xs: Vec<f64> = (0..10_000).map(|i| (i as f64 * 0.7).sin()).collect();
        assert_eq!(pairwise_sum(&xs).to_bits(), pairwise_sum(&xs).to_bits());
    }
}
