use serde::{Deserialize, Serialize};

use super::power_law::PowerLawFit;
use super::sorted_finite;
use crate::error::{param, Error, Result};
use crate::numeric::{bisect, kolmogorov_cdf};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaldResult<T> {
    pub statistic: T,
    pub p_value: T,
    pub reject: bool,
}

/// `W = (a1 - a2)^2 / Var(a1)` against chi-squared with one degree of freedom.
///
/// Only the first fit's variance enters the statistic.
pub fn wald_test<T: Scalar>(first: &PowerLawFit<T>, second: &PowerLawFit<T>, alpha: T) -> Result<WaldResult<T>> {
    check_alpha(alpha)?;
    if !(first.variance > T::zero()) {
        return Err(Error::DegenerateVariance);
    }
    let d = first.alpha - second.alpha;
    let w = d * d / first.variance;
    let p = chi2_1_survival(w);
    Ok(WaldResult {
        statistic: w,
        p_value: p,
        reject: p < alpha,
    })
}

/// `P(chi2_1 > w) = erfc(sqrt(w / 2))`.
pub(crate) fn chi2_1_survival<T: Scalar>(w: T) -> T {
    if w <= T::zero() {
        return T::one();
    }
    T::of(libm::erfc((w.to_f64_lossy() / 2.0).sqrt()))
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(param(format!("significance level {alpha} outside (0, 1)")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult<T> {
    pub statistic: T,
    pub critical_value: T,
    /// Asymptotic p-value from the Kolmogorov distribution.
    pub p_value: T,
    pub reject: bool,
    pub n1: usize,
    pub n2: usize,
}

/// `c(alpha)` solving `K(c) = 1 - alpha` for the Kolmogorov distribution.
pub fn kolmogorov_critical_value<T: Scalar>(alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    let target = T::one() - alpha;
    Ok(bisect(T::of(1e-3), T::of(10.0), |x| kolmogorov_cdf(x) - target))
}

/// `sup_x |F1(x) - F2(x)|` over the two empirical CDFs.
pub fn ks_statistic<T: Scalar>(s1: &[T], s2: &[T]) -> Result<T> {
    let a = sorted_finite(s1)?;
    let b = sorted_finite(s2)?;
    let (n1, n2) = (T::of_usize(a.len()), T::of_usize(b.len()));
    let (mut i, mut j) = (0, 0);
    let mut d = T::zero();
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((T::of_usize(i) / n1 - T::of_usize(j) / n2).abs());
    }
    Ok(d)
}

/// Two-sample test with the asymptotic critical value
/// `D_alpha = c(alpha) sqrt((n1 + n2) / (n1 n2))`; rejects when `D > D_alpha`.
pub fn ks_two_sample<T: Scalar>(s1: &[T], s2: &[T], alpha: T) -> Result<KsResult<T>> {
    let c = kolmogorov_critical_value(alpha)?;
    let d = ks_statistic(s1, s2)?;
    let (n1, n2) = (T::of_usize(s1.len()), T::of_usize(s2.len()));
    let scale = ((n1 + n2) / (n1 * n2)).sqrt();
    let critical = c * scale;
    Ok(KsResult {
        statistic: d,
        critical_value: critical,
        p_value: T::one() - kolmogorov_cdf(d / scale),
        reject: d > critical,
        n1: s1.len(),
        n2: s2.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fit(alpha: f64, variance: f64) -> PowerLawFit<f64> {
        PowerLawFit {
            alpha,
            variance,
            continuous_variance: variance,
            x_min: 1,
            n_tail: 100,
        }
    }

    #[test]
    fn wald_null() {
        let r = wald_test(&fit(2.3, 0.01), &fit(2.3, 0.5), 0.05).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
    }

    #[test]
    fn wald_uses_first_variance() {
        let r = wald_test(&fit(2.0, 0.04), &fit(2.2, 1.0), 0.05).unwrap();
        assert!((r.statistic - 1.0).abs() < 1e-12);
        let r = wald_test(&fit(2.2, 1.0), &fit(2.0, 0.04), 0.05).unwrap();
        assert!((r.statistic - 0.04).abs() < 1e-12);
        assert!(matches!(
            wald_test(&fit(2.0, 0.0), &fit(2.0, 1.0), 0.05),
            Err(Error::DegenerateVariance)
        ));
        assert!(wald_test(&fit(2.0, 1.0), &fit(2.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn chi2_quantile() {
        let p = chi2_1_survival(3.841_458_820_694_124f64);
        assert!((p - 0.05).abs() < 1e-12);
    }

    #[test]
    fn critical_value_at_five_percent() {
        let c: f64 = kolmogorov_critical_value(0.05).unwrap();
        assert!((c - 1.358).abs() < 1e-3, "{c}");
        let c1: f64 = kolmogorov_critical_value(0.01).unwrap();
        assert!((c1 - 1.628).abs() < 1e-3, "{c1}");
    }

    #[test]
    fn disjoint_supports() {
        let a: Vec<f64> = (1..50).map(|i| i as f64 / 50.0).collect();
        let b: Vec<f64> = a.iter().map(|x| x + 2.0).collect();
        let r = ks_two_sample(&a, &b, 0.01).unwrap();
        assert_eq!(r.statistic, 1.0);
        assert!(r.reject);
        assert!(ks_two_sample(&a, &[], 0.05).is_err());
    }

    #[test]
    fn ties_are_stepped_together() {
        let r = ks_statistic::<f64>(&[1.0, 1.0, 2.0], &[1.0, 2.0, 2.0]).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn identical_samples(v in prop::collection::vec(-100f64..100.0, 1..200)) {
            let r = ks_two_sample(&v, &v, 0.05).unwrap();
            prop_assert_eq!(r.statistic, 0.0);
            prop_assert!(!r.reject);
        }

        #[test]
        fn monotone_invariance(
            a in prop::collection::vec(-5f64..5.0, 1..100),
            b in prop::collection::vec(-5f64..5.0, 1..100),
        ) {
            let d = ks_statistic(&a, &b).unwrap();
            let ta: Vec<f64> = a.iter().map(|x| x.exp()).collect();
            let tb: Vec<f64> = b.iter().map(|x| x.exp()).collect();
            prop_assert_eq!(d, ks_statistic(&ta, &tb).unwrap());
            let na: Vec<f64> = a.iter().map(|x| 3.0 * x + 1.0).collect();
            let nb: Vec<f64> = b.iter().map(|x| 3.0 * x + 1.0).collect();
            prop_assert_eq!(d, ks_statistic(&na, &nb).unwrap());
        }
    }
}
