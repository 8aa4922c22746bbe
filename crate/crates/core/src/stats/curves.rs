use serde::{Deserialize, Serialize};

use super::sorted_finite;
use crate::error::{param, Result};
use crate::scalar::Scalar;

/// How samples are grouped for densities and binned averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Binning {
    /// One bin per integer value; densities become probability masses.
    Integer,
    /// Equal-width bins between the sample minimum and maximum.
    Linear(usize),
    /// Equal-width bins in log space; every value must be positive.
    Log(usize),
}

/// Sorted empirical sample supporting CDF and CCDF lookups.
#[derive(Debug, Clone)]
pub struct Ecdf<T> {
    sorted: Vec<T>,
}

impl<T: Scalar> Ecdf<T> {
    pub fn new(samples: &[T]) -> Result<Self> {
        Ok(Self {
            sorted: sorted_finite(samples)?,
        })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    fn count_le(&self, x: T) -> usize {
        self.sorted.partition_point(|&v| v <= x)
    }

    fn count_lt(&self, x: T) -> usize {
        self.sorted.partition_point(|&v| v < x)
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: T) -> T {
        T::of_usize(self.count_le(x)) / T::of_usize(self.len())
    }

    /// `P(X >= x)`, the convention used for log-log tail plots.
    pub fn ccdf(&self, x: T) -> T {
        T::of_usize(self.len() - self.count_lt(x)) / T::of_usize(self.len())
    }

    /// Distinct sample values, ascending.
    pub fn support(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::new();
        for &x in &self.sorted {
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn sorted(&self) -> &[T] {
        &self.sorted
    }
}

/// `(x, P(X <= x))` at every distinct value.
pub fn empirical_cdf<T: Scalar>(samples: &[T]) -> Result<Vec<(T, T)>> {
    let e = Ecdf::new(samples)?;
    Ok(e.support().into_iter().map(|x| (x, e.cdf(x))).collect())
}

/// `(x, P(X >= x))` at every distinct value.
pub fn empirical_ccdf<T: Scalar>(samples: &[T]) -> Result<Vec<(T, T)>> {
    let e = Ecdf::new(samples)?;
    Ok(e.support().into_iter().map(|x| (x, e.ccdf(x))).collect())
}

struct Bins<T> {
    edges: Vec<T>,
    log: bool,
}

impl<T: Scalar> Bins<T> {
    fn new(lo: T, hi: T, count: usize, log: bool) -> Result<Self> {
        if count == 0 {
            return Err(param("bin count must be positive"));
        }
        let (a, b) = if log { (lo.ln(), hi.ln()) } else { (lo, hi) };
        let width = (b - a) / T::of_usize(count);
        let edges = (0..=count)
            .map(|i| {
                let e = if i == count { b } else { a + width * T::of_usize(i) };
                if log {
                    e.exp()
                } else {
                    e
                }
            })
            .collect();
        Ok(Self { edges, log })
    }

    fn index(&self, x: T) -> usize {
        let last = self.edges.len() - 2;
        self.edges[1..].partition_point(|&e| e <= x).min(last)
    }

    fn center(&self, i: usize) -> T {
        let (a, b) = (self.edges[i], self.edges[i + 1]);
        if self.log {
            (a * b).sqrt()
        } else {
            (a + b) * T::of(0.5)
        }
    }

    fn width(&self, i: usize) -> T {
        self.edges[i + 1] - self.edges[i]
    }
}

fn check_log<T: Scalar>(sorted: &[T]) -> Result<()> {
    if sorted[0] <= T::zero() {
        return Err(param("logarithmic binning needs strictly positive values"));
    }
    Ok(())
}

/// Tabulated density `(bin centre, density)` over non-empty bins.
///
/// A sample with a single distinct value yields one point of mass 1.
pub fn empirical_pdf<T: Scalar>(samples: &[T], binning: Binning) -> Result<Vec<(T, T)>> {
    let sorted = sorted_finite(samples)?;
    let n = T::of_usize(sorted.len());
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    match binning {
        Binning::Integer => {
            let mut out: Vec<(T, T)> = Vec::new();
            for &x in &sorted {
                let k = x.floor();
                match out.last_mut() {
                    Some((v, c)) if *v == k => *c = *c + T::one(),
                    _ => out.push((k, T::one())),
                }
            }
            Ok(out.into_iter().map(|(k, c)| (k, c / n)).collect())
        }
        Binning::Linear(_) | Binning::Log(_) if lo == hi => Ok(vec![(lo, T::one())]),
        Binning::Linear(count) | Binning::Log(count) => {
            let log = matches!(binning, Binning::Log(_));
            if log {
                check_log(&sorted)?;
            }
            let bins = Bins::new(lo, hi, count, log)?;
            let mut counts = vec![0usize; count];
            for &x in &sorted {
                counts[bins.index(x)] += 1;
            }
            Ok(counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (bins.center(i), T::of_usize(c) / (n * bins.width(i))))
                .collect())
        }
    }
}

/// Mean of `ys` within bins of `xs`: `(bin centre, mean y)` for non-empty bins.
pub fn binned_mean<T: Scalar>(xs: &[T], ys: &[T], binning: Binning) -> Result<Vec<(T, T)>> {
    if xs.len() != ys.len() {
        return Err(param("binned_mean needs paired samples"));
    }
    let sorted = sorted_finite(xs)?;
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let mut acc: Vec<(T, T, usize)> = Vec::new();
    match binning {
        Binning::Integer => {
            let mut pairs: Vec<(T, T)> = xs.iter().map(|x| x.floor()).zip(ys.iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
            for (k, y) in pairs {
                match acc.last_mut() {
                    Some((v, s, c)) if *v == k => {
                        *s = *s + y;
                        *c += 1;
                    }
                    _ => acc.push((k, y, 1)),
                }
            }
        }
        Binning::Linear(_) | Binning::Log(_) if lo == hi => {
            let s = ys.iter().fold(T::zero(), |s, &y| s + y);
            acc.push((lo, s, ys.len()));
        }
        Binning::Linear(count) | Binning::Log(count) => {
            let log = matches!(binning, Binning::Log(_));
            if log {
                check_log(&sorted)?;
            }
            let bins = Bins::new(lo, hi, count, log)?;
            let mut sums = vec![(T::zero(), 0usize); count];
            for (&x, &y) in xs.iter().zip(ys) {
                let i = bins.index(x);
                sums[i].0 = sums[i].0 + y;
                sums[i].1 += 1;
            }
            for (i, (s, c)) in sums.into_iter().enumerate() {
                if c > 0 {
                    acc.push((bins.center(i), s, c));
                }
            }
        }
    }
    Ok(acc.into_iter().map(|(x, s, c)| (x, s / T::of_usize(c))).collect())
}
