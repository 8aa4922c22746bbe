//! Closed-form branching-process predictions for the cascade model.
//!
//! A sharer on a tree of degree `z` recruits on average `mu = z (1 - q) p`
//! neighbours, `p` being the probability that a neighbour's opinion falls
//! within `delta` of the item's fitness and `q` the probability that the
//! link to it is blocked. Below criticality the mean cascade seeded by `m`
//! first sharers has size `<m> / (1 - mu)`.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::numeric::integrate;
use crate::scalar::Scalar;

/// How the per-neighbour sharing probability is averaged over fitness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShareApprox {
    /// `p = 2 delta`, ignoring truncation of the window at 0 and 1.
    Interior,
    /// `p = 2 delta - delta^2`, the exact mean over uniform fitness.
    BoundaryAveraged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchingInputs<T> {
    pub z: usize,
    pub delta: T,
    pub q: T,
    pub mean_first_sharers: T,
    /// Optional tabulated degree distribution `(k, d(k))`.
    pub degree_distribution: Option<Vec<(usize, T)>>,
}

impl<T: Scalar> BranchingInputs<T> {
    pub fn validate(&self) -> Result<()> {
        if self.z == 0 {
            return Err(param("z must be positive"));
        }
        unit_interval(self.delta, "delta")?;
        unit_interval(self.q, "q")?;
        if !(self.mean_first_sharers >= T::zero()) {
            return Err(param("mean first sharers must be non-negative"));
        }
        if let Some(d) = &self.degree_distribution {
            check_degree_distribution(d)?;
        }
        Ok(())
    }
}

fn unit_interval<T: Scalar>(x: T, name: &str) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(param(format!("{name} = {x} outside [0, 1]")))
    }
}

/// `min(1, theta + delta) - max(0, theta - delta)`: the share probability
/// under uniform opinions.
pub fn share_probability<T: Scalar>(theta: T, delta: T) -> Result<T> {
    unit_interval(theta, "theta")?;
    unit_interval(delta, "delta")?;
    Ok((theta + delta).min(T::one()) - (theta - delta).max(T::zero()))
}

/// `p_theta = f(theta) * integral of f over [max(0, theta - delta), min(1, theta + delta)]`
/// for an arbitrary opinion/fitness density `f` on `[0, 1]`.
///
/// The density must integrate to one within `1e-6`.
pub fn share_probability_with_density<T: Scalar>(theta: T, delta: T, density: impl Fn(T) -> T) -> Result<T> {
    unit_interval(theta, "theta")?;
    unit_interval(delta, "delta")?;
    let tol = T::of(1e-10);
    let total = integrate(&density, T::zero(), T::one(), tol);
    if !((total - T::one()).abs() <= T::of(1e-6)) {
        return Err(Error::Density(total.to_f64_lossy()));
    }
    let lo = (theta - delta).max(T::zero());
    let hi = (theta + delta).min(T::one());
    Ok(density(theta) * integrate(&density, lo, hi, tol))
}

/// Fitness-averaged share probability under uniform opinions.
pub fn mean_share_probability<T: Scalar>(delta: T, approx: ShareApprox) -> T {
    let two = T::of(2.0);
    match approx {
        ShareApprox::Interior => two * delta,
        ShareApprox::BoundaryAveraged => two * delta - delta * delta,
    }
}

/// `mu = z (1 - q) p` with `p` averaged according to `approx`.
pub fn branching_ratio<T: Scalar>(inputs: &BranchingInputs<T>, approx: ShareApprox) -> Result<T> {
    inputs.validate()?;
    let p = mean_share_probability(inputs.delta, approx);
    Ok((T::one() - inputs.q) * p * T::of_usize(inputs.z))
}

/// `S = <m> / (1 - mu)`; fails at or above criticality.
pub fn expected_cascade_size<T: Scalar>(mean_first_sharers: T, mu: T) -> Result<T> {
    if !(mu < T::one()) {
        return Err(Error::Supercritical(mu.to_f64_lossy()));
    }
    if !(mean_first_sharers >= T::zero()) {
        return Err(param("mean first sharers must be non-negative"));
    }
    Ok(mean_first_sharers / (T::one() - mu))
}

fn check_degree_distribution<T: Scalar>(d: &[(usize, T)]) -> Result<()> {
    if d.iter().any(|&(_, w)| !(w >= T::zero())) {
        return Err(param("degree distribution has negative weight"));
    }
    let total = d.iter().fold(T::zero(), |s, &(_, w)| s + w);
    if !((total - T::one()).abs() <= T::of(1e-6)) {
        return Err(param(format!("degree distribution sums to {total}, not 1")));
    }
    Ok(())
}

/// `mu_het = (1 - q) p <z^2> / <z>` with `z = k - 1` moments taken from `d(k)`.
pub fn heterogeneous_branching<T: Scalar>(degree_distribution: &[(usize, T)], p: T, q: T) -> Result<T> {
    check_degree_distribution(degree_distribution)?;
    unit_interval(p, "p")?;
    unit_interval(q, "q")?;
    let mean_k = degree_distribution
        .iter()
        .fold(T::zero(), |s, &(k, w)| s + T::of_usize(k) * w);
    if !(mean_k > T::zero()) {
        return Err(param("degree distribution has zero mean"));
    }
    let (z1, z2) = degree_distribution
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(k, w)| {
            let z = T::of_usize(k.saturating_sub(1));
            (a + z * w, b + z * z * w)
        });
    if !(z1 > T::zero()) {
        return Err(param("degree distribution has no excess degree"));
    }
    Ok((T::one() - q) * p * (z2 / z1))
}

/// Analytic predictions attached to a sweep grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction<T> {
    pub mu: T,
    /// `None` when `mu >= 1`.
    pub size: Option<T>,
}

/// `mu` and `S` for the simulator's parameters with `q = 1 - phi_HL`.
pub fn predict<T: Scalar>(
    z: usize,
    delta: T,
    phi_hl: T,
    mean_first_sharers: T,
    approx: ShareApprox,
) -> Result<Prediction<T>> {
    let inputs = BranchingInputs {
        z,
        delta,
        q: T::one() - phi_hl,
        mean_first_sharers,
        degree_distribution: None,
    };
    let mu = branching_ratio(&inputs, approx)?;
    Ok(Prediction {
        mu,
        size: expected_cascade_size(mean_first_sharers, mu).ok(),
    })
}
