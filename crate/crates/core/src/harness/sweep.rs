use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SweepConfig;
use crate::branching::{predict, ShareApprox};
use crate::diffusion::{cascade_seed, generate_news, run_cascade, CascadeOutcome, NewsItem};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::scalar::Scalar;
use crate::seeding::derive_seed;
use crate::stats::mean_sd;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint<T> {
    pub phi_hl: T,
    pub r: T,
    pub delta: T,
}

/// Aggregated cascades of one grid point, pooled over every iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepResult<T> {
    pub point: GridPoint<T>,
    pub mean_size: T,
    pub sd_size: T,
    pub mean_height: T,
    pub sd_height: T,
    /// Branching ratio with `p = 2 delta` and `q = 1 - phi_HL`.
    pub mu_pred: T,
    /// `<m> / (1 - mu_pred)`; `None` when supercritical.
    pub size_pred: Option<T>,
    /// Same with `p = 2 delta - delta^2`.
    pub mu_pred_boundary: T,
    pub size_pred_boundary: Option<T>,
    /// Mean seeded first-sharer count (draws capped at `n`).
    pub mean_first_sharers: T,
    pub iterations: usize,
    pub cascades: usize,
}

impl<T: Scalar> SweepResult<T> {
    pub fn supercritical(&self) -> bool {
        self.size_pred.is_none()
    }
}

/// Raw per-cascade outcomes of one grid point, iteration-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSamples {
    pub sizes: Vec<usize>,
    pub heights: Vec<usize>,
    pub first_sharers: Vec<usize>,
}

/// Seed of iteration `iteration` at grid point `index`.
pub fn unit_seed(master: u64, index: usize, iteration: usize) -> u64 {
    derive_seed(master, &[index as u64, iteration as u64])
}

/// News items of one iteration with their cascades, in item order.
pub type Iteration<T> = (Vec<NewsItem<T>>, Vec<CascadeOutcome<T>>);

/// One iteration: fresh graph, labeling and news, then every cascade in item order.
/// First-sharer draws above `n` are capped at `n`.
pub fn simulate_iteration<T: Scalar>(config: &SweepConfig<T>, point: &GridPoint<T>, seed: u64) -> Result<Iteration<T>> {
    let graph =
        SignedGraph::generate_small_world(config.n, config.z, point.r, seed)?.label_edges(point.phi_hl, seed)?;
    let mut news = generate_news(&config.first_sharers, config.m, seed)?;
    for item in &mut news {
        item.first_sharers = item.first_sharers.min(config.n);
    }
    let outcomes = news
        .iter()
        .enumerate()
        .map(|(i, item)| run_cascade(&graph, item, point.delta, cascade_seed(seed, i)))
        .collect::<Result<_>>()?;
    Ok((news, outcomes))
}

fn run_iteration<T: Scalar>(config: &SweepConfig<T>, point: &GridPoint<T>, seed: u64) -> Result<PointSamples> {
    let (news, outcomes) = simulate_iteration(config, point, seed)?;
    Ok(PointSamples {
        sizes: outcomes.iter().map(|c| c.tree.size()).collect(),
        heights: outcomes.iter().map(|c| c.tree.height()).collect(),
        first_sharers: news.iter().map(|n| n.first_sharers).collect(),
    })
}

/// Runs every iteration of grid point `index`, iterations in parallel,
/// concatenated in iteration order.
pub fn run_grid_point<T: Scalar>(config: &SweepConfig<T>, index: usize, point: &GridPoint<T>) -> Result<PointSamples> {
    let parts: Vec<PointSamples> = (0..config.iterations)
        .into_par_iter()
        .map(|it| run_iteration(config, point, unit_seed(config.seed, index, it)))
        .collect::<Result<_>>()?;
    let mut all = PointSamples {
        sizes: Vec::new(),
        heights: Vec::new(),
        first_sharers: Vec::new(),
    };
    for p in parts {
        all.sizes.extend(p.sizes);
        all.heights.extend(p.heights);
        all.first_sharers.extend(p.first_sharers);
    }
    Ok(all)
}

fn as_scalars<T: Scalar>(v: &[usize]) -> Vec<T> {
    v.iter().map(|&x| T::of_usize(x)).collect()
}

/// Pools the cascades of one grid point into a [`SweepResult`].
pub fn aggregate<T: Scalar>(
    config: &SweepConfig<T>,
    point: GridPoint<T>,
    samples: &PointSamples,
) -> Result<SweepResult<T>> {
    let empty = || Error::Config("no cascades to aggregate (m = 0)".into());
    let (mean_size, sd_size) = mean_sd(&as_scalars::<T>(&samples.sizes)).ok_or_else(empty)?;
    let (mean_height, sd_height) = mean_sd(&as_scalars::<T>(&samples.heights)).ok_or_else(empty)?;
    let (mean_m, _) = mean_sd(&as_scalars::<T>(&samples.first_sharers)).ok_or_else(empty)?;
    let interior = predict(config.z, point.delta, point.phi_hl, mean_m, ShareApprox::Interior)?;
    let boundary = predict(
        config.z,
        point.delta,
        point.phi_hl,
        mean_m,
        ShareApprox::BoundaryAveraged,
    )?;
    if interior.size.is_none() {
        log::warn!(
            "grid point phi_hl={} r={} delta={}: predicted branching ratio {} is supercritical",
            point.phi_hl,
            point.r,
            point.delta,
            interior.mu
        );
    }
    Ok(SweepResult {
        point,
        mean_size,
        sd_size,
        mean_height,
        sd_height,
        mu_pred: interior.mu,
        size_pred: interior.size,
        mu_pred_boundary: boundary.mu,
        size_pred_boundary: boundary.size,
        mean_first_sharers: mean_m,
        iterations: config.iterations,
        cascades: samples.sizes.len(),
    })
}

/// Every grid point in canonical order. Each iteration builds a fresh graph,
/// labeling and news set from a seed derived from `(seed, point, iteration)`;
/// size and height statistics pool all cascades of all iterations.
pub fn run_sweep<T: Scalar>(config: &SweepConfig<T>) -> Result<Vec<SweepResult<T>>> {
    config.validate()?;
    if config.m == 0 {
        return Err(Error::Config("m must be at least 1".into()));
    }
    config
        .points()
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let samples = run_grid_point(config, i, &p)?;
            aggregate(config, p, &samples)
        })
        .collect()
}

const GRID_COLUMNS: [&str; 15] = [
    "phi_hl",
    "r",
    "delta",
    "mean_size",
    "sd_size",
    "mean_height",
    "sd_height",
    "mu_pred",
    "size_pred",
    "iterations",
    "mu_pred_boundary",
    "size_pred_boundary",
    "mean_first_sharers",
    "cascades",
    "supercritical",
];

pub fn write_grid_csv<T: Scalar, W: Write>(results: &[SweepResult<T>], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(GRID_COLUMNS)?;
    let opt = |x: Option<T>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in results {
        w.write_record([
            r.point.phi_hl.to_string(),
            r.point.r.to_string(),
            r.point.delta.to_string(),
            r.mean_size.to_string(),
            r.sd_size.to_string(),
            r.mean_height.to_string(),
            r.sd_height.to_string(),
            r.mu_pred.to_string(),
            opt(r.size_pred),
            r.iterations.to_string(),
            r.mu_pred_boundary.to_string(),
            opt(r.size_pred_boundary),
            r.mean_first_sharers.to_string(),
            r.cascades.to_string(),
            r.supercritical().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_csv<T: Scalar, R: Read>(reader: R) -> Result<Vec<SweepResult<T>>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let bad = |what: &str| Error::Parameter(format!("grid CSV: bad `{what}` field"));
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<T> {
            rec.get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .map(T::of)
                .ok_or_else(|| bad(GRID_COLUMNS[i]))
        };
        let opt = |i: usize| -> Result<Option<T>> {
            match rec.get(i) {
                Some("") => Ok(None),
                _ => num(i).map(Some),
            }
        };
        let int = |i: usize| -> Result<usize> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(GRID_COLUMNS[i]))
        };
        out.push(SweepResult {
            point: GridPoint {
                phi_hl: num(0)?,
                r: num(1)?,
                delta: num(2)?,
            },
            mean_size: num(3)?,
            sd_size: num(4)?,
            mean_height: num(5)?,
            sd_height: num(6)?,
            mu_pred: num(7)?,
            size_pred: opt(8)?,
            iterations: int(9)?,
            mu_pred_boundary: num(10)?,
            size_pred_boundary: opt(11)?,
            mean_first_sharers: num(12)?,
            cascades: int(13)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::FittedDistribution;

    fn small() -> SweepConfig<f64> {
        SweepConfig {
            n: 400,
            m: 50,
            z: 8,
            delta: vec![0.01, 0.05],
            phi_hl: vec![0.5, 1.0],
            r: vec![0.1],
            first_sharers: FittedDistribution::inverse_gaussian(4.0, 2.0).unwrap(),
            iterations: 3,
            seed: 17,
            output: None,
        }
    }

    #[test]
    fn aggregation_matches_naive_recomputation() {
        let c = small();
        let points = c.points();
        let results = run_sweep(&c).unwrap();
        assert_eq!(results.len(), 4);
        for (i, (p, res)) in points.iter().zip(&results).enumerate() {
            let mut sizes = Vec::new();
            let mut heights = Vec::new();
            for it in 0..c.iterations {
                let s = run_iteration(&c, p, unit_seed(c.seed, i, it)).unwrap();
                sizes.extend(s.sizes.iter().map(|&x| x as f64));
                heights.extend(s.heights.iter().map(|&x| x as f64));
            }
            let n = sizes.len() as f64;
            let mean = sizes.iter().sum::<f64>() / n;
            let sd = (sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
            assert_eq!(res.mean_size, mean);
            assert_eq!(res.sd_size, sd);
            let hmean = heights.iter().sum::<f64>() / n;
            assert_eq!(res.mean_height, hmean);
            assert_eq!(res.cascades, 150);
            assert!(res.mean_size >= res.mean_first_sharers);
        }
    }

    #[test]
    fn deterministic_and_round_trips() {
        let c = SweepConfig {
            iterations: 1,
            ..small()
        };
        let a = run_sweep(&c).unwrap();
        let b = run_sweep(&c).unwrap();
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        write_grid_csv(&a, &mut buf_a).unwrap();
        write_grid_csv(&b, &mut buf_b).unwrap();
        assert_eq!(buf_a, buf_b);
        let back: Vec<SweepResult<f64>> = read_grid_csv(buf_a.as_slice()).unwrap();
        assert_eq!(back, a);
        let header = String::from_utf8(buf_a).unwrap();
        assert!(
            header.starts_with("phi_hl,r,delta,mean_size,sd_size,mean_height,sd_height,mu_pred,size_pred,iterations")
        );
    }

    #[test]
    fn supercritical_points_are_flagged() {
        let c = SweepConfig {
            delta: vec![0.1],
            phi_hl: vec![1.0],
            m: 5,
            iterations: 1,
            ..small()
        };
        let res = run_sweep(&c).unwrap();
        assert!(res[0].supercritical());
        assert_eq!(res[0].size_pred, None);
    }

    #[test]
    fn single_precision_sweep() {
        let c = SweepConfig::<f32> {
            n: 300,
            m: 20,
            delta: vec![0.03],
            phi_hl: vec![0.9],
            r: vec![0.5],
            iterations: 2,
            ..SweepConfig::default()
        };
        let res = run_sweep(&c).unwrap();
        assert_eq!(res.len(), 1);
        assert!(res[0].mean_size >= res[0].mean_first_sharers);
        assert!((res[0].mu_pred - 0.9 * 0.06 * 8.0).abs() < 1e-6);
    }
}
