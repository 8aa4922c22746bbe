use serde::{Deserialize, Serialize};

use super::sorted_finite;
use crate::error::Result;
use crate::scalar::Scalar;

/// Six-number summary: extremes, quartiles and mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats<T> {
    pub min: T,
    pub q1: T,
    pub median: T,
    pub mean: T,
    pub q3: T,
    pub max: T,
}

impl<T: Scalar> SummaryStats<T> {
    pub const LABELS: [&'static str; 6] = ["Min", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max"];

    /// Values in [`SummaryStats::LABELS`] order.
    pub fn values(&self) -> [T; 6] {
        [self.min, self.q1, self.median, self.mean, self.q3, self.max]
    }
}

/// Quantile of sorted data by linear interpolation between order statistics
/// at position `(n - 1) p`.
pub(crate) fn quantile_sorted<T: Scalar>(sorted: &[T], p: T) -> T {
    let h = T::of_usize(sorted.len() - 1) * p;
    let lo = h.floor();
    let i = lo.to_usize().unwrap_or(0);
    if i + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    let frac = h - lo;
    sorted[i] + frac * (sorted[i + 1] - sorted[i])
}

pub fn summary_stats<T: Scalar>(samples: &[T]) -> Result<SummaryStats<T>> {
    let sorted = sorted_finite(samples)?;
    let mean = sorted.iter().fold(T::zero(), |s, &x| s + x) / T::of_usize(sorted.len());
    Ok(SummaryStats {
        min: sorted[0],
        q1: quantile_sorted(&sorted, T::of(0.25)),
        median: quantile_sorted(&sorted, T::of(0.5)),
        // Summation rounding can push the mean of a constant sample past its bounds.
        mean: mean.max(sorted[0]).min(sorted[sorted.len() - 1]),
        q3: quantile_sorted(&sorted, T::of(0.75)),
        max: sorted[sorted.len() - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn five_values() {
        let s = summary_stats(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(
            (s.min, s.q1, s.median, s.mean, s.q3, s.max),
            (1.0, 2.0, 3.0, 3.0, 4.0, 5.0)
        );
    }

    #[test]
    fn interpolated_quartiles() {
        let s = summary_stats(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.q1, 1.75);
        assert_eq!(s.median, 2.5);
        assert_eq!(s.q3, 3.25);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(summary_stats::<f64>(&[]).is_err());
        assert!(summary_stats(&[1.0, f64::NAN]).is_err());
    }

    fn naive_quantile(v: &[f64], p: f64) -> f64 {
        let mut s = v.to_vec();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let h = (s.len() - 1) as f64 * p;
        let j = h.floor() as usize;
        let k = (j + 1).min(s.len() - 1);
        s[j] + (h - j as f64) * (s[k] - s[j])
    }

    proptest! {
        #[test]
        fn agrees_with_sort_oracle(v in prop::collection::vec(-1e6f64..1e6, 1..1000)) {
            let s = summary_stats(&v).unwrap();
            let mut sorted = v.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assert_eq!(s.min, sorted[0]);
            prop_assert_eq!(s.max, *sorted.last().unwrap());
            prop_assert_eq!(s.q1, naive_quantile(&v, 0.25));
            prop_assert_eq!(s.median, naive_quantile(&v, 0.5));
            prop_assert_eq!(s.q3, naive_quantile(&v, 0.75));
            prop_assert!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max);
            prop_assert!(s.min <= s.mean && s.mean <= s.max);
        }
    }
}
