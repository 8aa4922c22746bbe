//! First-sharer count models and their maximum-likelihood fits.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::summary::{summary_stats, SummaryStats};
use crate::error::{param, Error, Result};
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    InverseGaussian,
    LogNormal,
    Poisson,
    Uniform,
    Empirical,
}

impl Family {
    /// Column label used in comparison tables.
    pub fn label(self) -> &'static str {
        match self {
            Family::InverseGaussian => "IG",
            Family::LogNormal => "LN",
            Family::Poisson => "Poi",
            Family::Uniform => "Unif",
            Family::Empirical => "Emp",
        }
    }
}

/// Distribution of the number of first sharers of a news item.
///
/// The inverse Gaussian is parameterised by mean and shape; the log-normal
/// by the mean and standard deviation of `ln X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
#[serde(bound = "T: Scalar")]
pub enum FittedDistribution<T> {
    InverseGaussian { mean: T, shape: T },
    LogNormal { mu: T, sigma: T },
    Poisson { rate: T },
    Uniform { low: T, high: T },
    Empirical { samples: Vec<T> },
}

impl<T: Scalar> FittedDistribution<T> {
    pub fn inverse_gaussian(mean: T, shape: T) -> Result<Self> {
        Self::InverseGaussian { mean, shape }.validated()
    }

    pub fn family(&self) -> Family {
        match self {
            Self::InverseGaussian { .. } => Family::InverseGaussian,
            Self::LogNormal { .. } => Family::LogNormal,
            Self::Poisson { .. } => Family::Poisson,
            Self::Uniform { .. } => Family::Uniform,
            Self::Empirical { .. } => Family::Empirical,
        }
    }

    pub fn validated(self) -> Result<Self> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        let ok = match &self {
            Self::InverseGaussian { mean, shape } => positive(*mean) && positive(*shape),
            Self::LogNormal { mu, sigma } => mu.is_finite() && *sigma >= T::zero() && sigma.is_finite(),
            Self::Poisson { rate } => positive(*rate),
            Self::Uniform { low, high } => low.is_finite() && high.is_finite() && *low >= T::zero() && low <= high,
            Self::Empirical { samples } => {
                !samples.is_empty() && samples.iter().all(|x| x.is_finite() && *x >= T::zero())
            }
        };
        if ok {
            Ok(self)
        } else {
            Err(param(format!("invalid {} parameters: {self}", self.family().label())))
        }
    }

    /// Analytic mean of the real-valued distribution.
    pub fn mean(&self) -> T {
        match self {
            Self::InverseGaussian { mean, .. } => *mean,
            Self::LogNormal { mu, sigma } => (*mu + *sigma * *sigma * T::of(0.5)).exp(),
            Self::Poisson { rate } => *rate,
            Self::Uniform { low, high } => (*low + *high) * T::of(0.5),
            Self::Empirical { samples } => samples.iter().fold(T::zero(), |s, &x| s + x) / T::of_usize(samples.len()),
        }
    }

    /// One real-valued draw. Parameters must already be valid.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match self {
            Self::InverseGaussian { mean, shape } => T::sample_inverse_gaussian(*mean, *shape, rng),
            Self::LogNormal { mu, sigma } => T::sample_log_normal(*mu, *sigma, rng),
            Self::Poisson { rate } => T::sample_poisson(*rate, rng),
            Self::Uniform { low, high } if low == high => *low,
            Self::Uniform { low, high } => rng.random_range(*low..=*high),
            Self::Empirical { samples } => samples[rng.random_range(0..samples.len())],
        }
    }

    /// Integer part of one draw; non-representable or negative draws give 0.
    pub fn sample_count<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sample(rng).floor().to_usize().unwrap_or(0)
    }
}

impl<T: Scalar> fmt::Display for FittedDistribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InverseGaussian { mean, shape } => write!(f, "ig:{mean},{shape}"),
            Self::LogNormal { mu, sigma } => write!(f, "ln:{mu},{sigma}"),
            Self::Poisson { rate } => write!(f, "poisson:{rate}"),
            Self::Uniform { low, high } => write!(f, "uniform:{low},{high}"),
            Self::Empirical { samples } => write!(f, "empirical:<{} values>", samples.len()),
        }
    }
}

/// Parses `ig:MEAN,SHAPE`, `ln:MU,SIGMA`, `poisson:RATE`, `uniform:LOW,HIGH`
/// or `empirical:V1,V2,...`.
impl<T: Scalar> FromStr for FittedDistribution<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| param(format!("distribution `{s}` lacks `family:` prefix")))?;
        let values = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<f64>()
                    .map(T::of)
                    .map_err(|_| param(format!("bad number `{a}` in `{s}`")))
            })
            .collect::<Result<Vec<T>>>()?;
        let want = |k: usize| {
            if values.len() == k {
                Ok(())
            } else {
                Err(param(format!("`{name}` takes {k} parameter(s), got {}", values.len())))
            }
        };
        let dist = match name.to_ascii_lowercase().as_str() {
            "ig" | "inverse_gaussian" => {
                want(2)?;
                Self::InverseGaussian {
                    mean: values[0],
                    shape: values[1],
                }
            }
            "ln" | "log_normal" | "lognormal" => {
                want(2)?;
                Self::LogNormal {
                    mu: values[0],
                    sigma: values[1],
                }
            }
            "poi" | "poisson" => {
                want(1)?;
                Self::Poisson { rate: values[0] }
            }
            "unif" | "uniform" => {
                want(2)?;
                Self::Uniform {
                    low: values[0],
                    high: values[1],
                }
            }
            "emp" | "empirical" => Self::Empirical { samples: values },
            other => return Err(param(format!("unknown distribution family `{other}`"))),
        };
        dist.validated()
    }
}

/// `m` first-sharer counts, each the integer part of a draw from `dist`.
pub fn sample_first_sharers<T: Scalar>(dist: &FittedDistribution<T>, m: usize, seed: u64) -> Result<Vec<usize>> {
    let dist = dist.clone().validated()?;
    let mut rng = rng_from_seed(derive_seed(seed, &[stream::FIRST_SHARERS]));
    Ok((0..m).map(|_| dist.sample_count(&mut rng)).collect())
}

/// Per-family fits of an observed first-sharer sample and the matching
/// six-number summaries.
#[derive(Debug, Clone)]
pub struct FirstSharerFits<T> {
    pub data: SummaryStats<T>,
    /// Zero counts left out of the inverse Gaussian and log-normal fits.
    pub excluded_zeros: usize,
    /// One row per family; `fit` is `None` with a reason when the family
    /// cannot be fitted to this sample.
    pub families: Vec<FamilyFit<T>>,
}

#[derive(Debug, Clone)]
pub struct FamilyFit<T> {
    pub family: Family,
    pub fit: Option<FittedDistribution<T>>,
    /// Summary of an equal-size sample drawn from `fit`.
    pub simulated: Option<SummaryStats<T>>,
    pub note: Option<String>,
}

impl<T: Scalar> FirstSharerFits<T> {
    pub fn family(&self, family: Family) -> Option<&FamilyFit<T>> {
        self.families.iter().find(|f| f.family == family)
    }

    /// Table with columns `statistic, data, IG, LN, Poi`; blank cells mark
    /// families that could not be fitted.
    pub fn write_table_csv<W: Write>(&self, writer: W) -> Result<()> {
        let cols = [Family::InverseGaussian, Family::LogNormal, Family::Poisson];
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["statistic".to_string(), "data".to_string()];
        header.extend(cols.iter().map(|c| c.label().to_string()));
        w.write_record(&header)?;
        let data = self.data.values();
        let sims: Vec<Option<[T; 6]>> = cols
            .iter()
            .map(|&c| self.family(c).and_then(|f| f.simulated).map(|s| s.values()))
            .collect();
        for (row, label) in SummaryStats::<T>::LABELS.iter().enumerate() {
            let mut rec = vec![label.to_string(), data[row].to_string()];
            rec.extend(sims.iter().map(|s| s.map(|v| v[row].to_string()).unwrap_or_default()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Maximum-likelihood fit of every family to observed first-sharer counts.
///
/// Inverse Gaussian: mean = sample mean, shape = n / sum(1/x - 1/mean).
/// Log-normal: mean and (biased) standard deviation of `ln x`. Poisson:
/// rate = mean. Uniform: sample extremes. Zeros are dropped from the two
/// log-scale families and counted in `excluded_zeros`. The comparison
/// summaries come from equal-size samples drawn with `seed`.
pub fn fit_first_sharers<T: Scalar>(samples: &[u64], seed: u64) -> Result<FirstSharerFits<T>> {
    let positive: Vec<T> = samples.iter().filter(|&&x| x > 0).map(|&x| T::of(x as f64)).collect();
    if positive.len() < 2 {
        return Err(Error::DegenerateSample(format!(
            "{} positive first-sharer counts, need at least 2",
            positive.len()
        )));
    }
    let all: Vec<T> = samples.iter().map(|&x| T::of(x as f64)).collect();
    let excluded_zeros = all.len() - positive.len();
    let data = summary_stats(&all)?;
    let n = all.len();

    let mean_of = |v: &[T]| v.iter().fold(T::zero(), |s, &x| s + x) / T::of_usize(v.len());

    let ig = {
        let mean = mean_of(&positive);
        let inv = positive
            .iter()
            .fold(T::zero(), |s, &x| s + (T::one() / x - T::one() / mean));
        if inv > T::zero() {
            Ok(FittedDistribution::InverseGaussian {
                mean,
                shape: T::of_usize(positive.len()) / inv,
            })
        } else {
            Err("degenerate: constant sample gives an infinite shape".to_string())
        }
    };
    let ln = {
        let logs: Vec<T> = positive.iter().map(|x| x.ln()).collect();
        let mu = mean_of(&logs);
        let var = logs.iter().fold(T::zero(), |s, &l| s + (l - mu) * (l - mu)) / T::of_usize(logs.len());
        Ok(FittedDistribution::LogNormal { mu, sigma: var.sqrt() })
    };
    let poisson = {
        let rate = mean_of(&all);
        Ok(FittedDistribution::Poisson { rate })
    };
    let uniform = Ok(FittedDistribution::Uniform {
        low: data.min,
        high: data.max,
    });
    let empirical = Ok(FittedDistribution::Empirical { samples: all.clone() });

    let mut families = Vec::new();
    for (i, fit) in [ig, ln, poisson, uniform, empirical].into_iter().enumerate() {
        let fit: std::result::Result<FittedDistribution<T>, String> =
            fit.and_then(|f| f.validated().map_err(|e| e.to_string()));
        let family = [
            Family::InverseGaussian,
            Family::LogNormal,
            Family::Poisson,
            Family::Uniform,
            Family::Empirical,
        ][i];
        families.push(match fit {
            Ok(f) => {
                let mut rng = rng_from_seed(derive_seed(seed, &[stream::FIRST_SHARERS, i as u64]));
                let draws: Vec<T> = (0..n).map(|_| f.sample(&mut rng)).collect();
                FamilyFit {
                    family,
                    simulated: summary_stats(&draws).ok(),
                    fit: Some(f),
                    note: None,
                }
            }
            Err(note) => FamilyFit {
                family,
                fit: None,
                simulated: None,
                note: Some(note),
            },
        });
    }
    Ok(FirstSharerFits {
        data,
        excluded_zeros,
        families,
    })
}
