//! Discrete power-law fitting by maximum likelihood.
//!
//! For integer data `x >= x_min` with `P(x) = x^(-alpha) / zeta(alpha, x_min)`
//! the likelihood equation is `E_alpha[ln X] = mean(ln x)`. The left side is
//! a ratio of Hurwitz zeta log-moments and decreases monotonically in alpha,
//! so a safeguarded Newton iteration converges from any bracket.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::numeric::hurwitz_log_moments;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit<T> {
    pub alpha: T,
    /// Asymptotic variance of the discrete MLE, `1 / (n Var_alpha[ln X])`.
    pub variance: T,
    /// Continuous-approximation variance `(alpha - 1)^2 / n`.
    pub continuous_variance: T,
    pub x_min: u64,
    pub n_tail: usize,
}

impl<T: Scalar> PowerLawFit<T> {
    pub fn std_error(&self) -> T {
        self.variance.sqrt()
    }

    /// `P(X >= x)` under the fitted law.
    pub fn ccdf(&self, x: u64) -> T {
        if x <= self.x_min {
            return T::one();
        }
        let num = hurwitz_log_moments(self.alpha, T::of(x as f64)).0;
        let den = hurwitz_log_moments(self.alpha, T::of(self.x_min as f64)).0;
        num / den
    }
}

/// `(E[ln X], Var[ln X])` for the discrete power law.
fn log_moments<T: Scalar>(alpha: T, x_min: T) -> (T, T) {
    let (z0, z1, z2) = hurwitz_log_moments(alpha, x_min);
    let m = z1 / z0;
    (m, z2 / z0 - m * m)
}

pub fn fit_power_law<T: Scalar>(samples: &[u64], x_min: u64) -> Result<PowerLawFit<T>> {
    if x_min == 0 {
        return Err(param("x_min must be at least 1"));
    }
    let tail: Vec<u64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    let n = tail.len();
    if n < 2 {
        return Err(Error::DegenerateSample(format!(
            "{n} samples at or above x_min = {x_min}"
        )));
    }
    if tail.iter().all(|&x| x == tail[0]) {
        return Err(Error::DegenerateSample(format!("all tail samples equal {}", tail[0])));
    }
    let target = tail.iter().fold(T::zero(), |s, &x| s + T::of(x as f64).ln()) / T::of_usize(n);
    let xm = T::of(x_min as f64);

    let g = |a: T| log_moments(a, xm).0 - target;
    let mut lo = T::one() + T::of(1e-6);
    if g(lo) <= T::zero() {
        return Err(Error::DegenerateSample(
            "tail too heavy: exponent at the lower bound".into(),
        ));
    }
    let mut hi = T::of(2.0);
    while g(hi) > T::zero() {
        lo = hi;
        hi = hi * T::of(2.0);
        if hi > T::of(1e3) {
            return Err(Error::DegenerateSample("exponent diverges".into()));
        }
    }

    let tol = T::epsilon().sqrt() * T::of(1e-2);
    let mut a = (lo + hi) * T::of(0.5);
    for _ in 0..200 {
        let (m, v) = log_moments(a, xm);
        let ga = m - target;
        if ga > T::zero() {
            lo = a;
        } else {
            hi = a;
        }
        // d/da E[ln X] = -Var[ln X]
        let newton = a + ga / v;
        let next = if newton > lo && newton < hi && v > T::zero() {
            newton
        } else {
            (lo + hi) * T::of(0.5)
        };
        if (next - a).abs() <= tol * a || hi - lo <= tol * a {
            a = next;
            break;
        }
        a = next;
    }

    let (_, var_ln) = log_moments(a, xm);
    let nf = T::of_usize(n);
    Ok(PowerLawFit {
        alpha: a,
        variance: T::one() / (nf * var_ln),
        continuous_variance: (a - T::one()) * (a - T::one()) / nf,
        x_min,
        n_tail: n,
    })
}

/// Chooses `x_min` among the distinct sample values leaving at least
/// `min_tail` observations, minimising the KS distance between the tail
/// and its fitted law. Returns the winning fit and its distance.
pub fn select_xmin<T: Scalar>(samples: &[u64], min_tail: usize) -> Result<(PowerLawFit<T>, T)> {
    let mut sorted: Vec<u64> = samples.iter().copied().filter(|&x| x >= 1).collect();
    sorted.sort_unstable();
    let mut candidates = sorted.clone();
    candidates.dedup();
    let mut best: Option<(PowerLawFit<T>, T)> = None;
    for &xm in &candidates {
        let start = sorted.partition_point(|&x| x < xm);
        let tail = &sorted[start..];
        if tail.len() < min_tail.max(2) {
            break;
        }
        let Ok(fit) = fit_power_law::<T>(tail, xm) else {
            continue;
        };
        let n = T::of_usize(tail.len());
        let mut d = T::zero();
        let mut i = 0;
        while i < tail.len() {
            let x = tail[i];
            // Empirical P(X >= x) against the model at each distinct value.
            let emp = T::of_usize(tail.len() - i) / n;
            d = d.max((emp - fit.ccdf(x)).abs());
            while i < tail.len() && tail[i] == x {
                i += 1;
            }
        }
        if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
            best = Some((fit, d));
        }
    }
    best.ok_or_else(|| Error::DegenerateSample("no admissible x_min".into()))
}
