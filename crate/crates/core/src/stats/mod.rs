//! Distribution fitting and hypothesis testing for cascade statistics.

mod curves;
mod fit;
mod hypothesis;
mod power_law;
mod summary;

pub use curves::{binned_mean, empirical_ccdf, empirical_cdf, empirical_pdf, Binning, Ecdf};
pub use fit::{fit_first_sharers, sample_first_sharers, Family, FamilyFit, FirstSharerFits, FittedDistribution};
pub use hypothesis::{kolmogorov_critical_value, ks_statistic, ks_two_sample, wald_test, KsResult, WaldResult};
pub use power_law::{fit_power_law, select_xmin, PowerLawFit};
pub use summary::{summary_stats, SummaryStats};

use crate::error::{param, Result};
use crate::scalar::Scalar;

pub(crate) fn sorted_finite<T: Scalar>(samples: &[T]) -> Result<Vec<T>> {
    if samples.is_empty() {
        return Err(param("empty sample"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(param("sample contains non-finite values"));
    }
    let mut v = samples.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
    Ok(v)
}

/// Arithmetic mean and sample standard deviation (n - 1 denominator).
/// A single value has standard deviation zero.
pub fn mean_sd<T: Scalar>(values: &[T]) -> Option<(T, T)> {
    if values.is_empty() {
        return None;
    }
    let n = T::of_usize(values.len());
    let mean = values.iter().fold(T::zero(), |s, &x| s + x) / n;
    if values.len() == 1 {
        return Some((mean, T::zero()));
    }
    let ss = values.iter().fold(T::zero(), |s, &x| s + (x - mean) * (x - mean));
    Some((mean, (ss / (n - T::one())).sqrt()))
}
