//! Parameter sweeps, tree ingestion and batch analysis.

mod analyze;
mod sweep;

pub use analyze::{analyze, AnalysisReport, Comparison, Curve, GroupReport, Grouping};
pub use sweep::{
    aggregate, read_grid_csv, run_grid_point, run_sweep, simulate_iteration, unit_seed, write_grid_csv, GridPoint,
    PointSamples, SweepResult,
};

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{read_trees_json, SharingTree};
use crate::scalar::Scalar;
use crate::stats::FittedDistribution;

/// Sweep definition. Every field has a default, so a config file only
/// needs the fields it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, bound = "T: Scalar")]
pub struct SweepConfig<T> {
    pub n: usize,
    pub m: usize,
    pub z: usize,
    pub delta: Vec<T>,
    pub phi_hl: Vec<T>,
    pub r: Vec<T>,
    pub first_sharers: FittedDistribution<T>,
    pub iterations: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

/// `lo, lo + step, ...` up to `hi` inclusive, computed by index to avoid drift.
pub fn grid<T: Scalar>(lo: T, hi: T, step: T) -> Vec<T> {
    let count = ((hi - lo) / step + T::of(1e-9)).floor().to_usize().unwrap_or(0);
    (0..=count)
        .map(|i| {
            let x = lo + step * T::of_usize(i);
            // Trim representation noise such as 0.30000000000000004.
            (x * T::of(1e12)).round() / T::of(1e12)
        })
        .collect()
}

impl<T: Scalar> Default for SweepConfig<T> {
    fn default() -> Self {
        Self {
            n: 5000,
            m: 1000,
            z: 8,
            delta: grid(T::of(0.01), T::of(0.05), T::of(0.005)),
            phi_hl: grid(T::of(0.5), T::one(), T::of(0.02)),
            r: [0.01, 0.1, 0.5, 1.0].into_iter().map(T::of).collect(),
            first_sharers: FittedDistribution::InverseGaussian {
                mean: T::of(18.73),
                shape: T::of(9.63),
            },
            iterations: 100,
            seed: 0,
            output: None,
        }
    }
}

impl<T: Scalar> SweepConfig<T> {
    /// Best-fit point for the troll sample: 16,889 users, 1,072 items,
    /// inverse Gaussian first sharers, `(phi_HL, r, delta) = (0.56, 0.01, 0.015)`.
    pub fn troll_preset() -> Self {
        Self {
            n: 16_889,
            m: 1072,
            z: 8,
            delta: vec![T::of(0.015)],
            phi_hl: vec![T::of(0.56)],
            r: vec![T::of(0.01)],
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.z < 2 || !self.z.is_multiple_of(2) || self.n <= self.z {
            return bad(format!("need even z >= 2 and n > z (n = {}, z = {})", self.n, self.z));
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        for (name, g) in [("delta", &self.delta), ("phi_hl", &self.phi_hl), ("r", &self.r)] {
            if g.is_empty() {
                return bad(format!("{name} grid is empty"));
            }
            if let Some(x) = g.iter().find(|x| !(**x >= T::zero() && **x <= T::one())) {
                return bad(format!("{name} grid value {x} outside [0, 1]"));
            }
        }
        self.first_sharers
            .clone()
            .validated()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// Grid points in canonical order: `phi_hl`, then `r`, then `delta`.
    pub fn points(&self) -> Vec<GridPoint<T>> {
        let mut out = Vec::with_capacity(self.phi_hl.len() * self.r.len() * self.delta.len());
        for &phi_hl in &self.phi_hl {
            for &r in &self.r {
                for &delta in &self.delta {
                    out.push(GridPoint { phi_hl, r, delta });
                }
            }
        }
        out
    }

    pub fn from_json_reader<R: Read>(reader: R) -> Result<Self> {
        Ok(serde_json::from_reader(reader)?)
    }
}

/// Reads and validates a file of sharing trees (a JSON array, or a single tree).
pub fn ingest_trees<T: Scalar>(path: &Path) -> Result<Vec<SharingTree<T>>> {
    let file = File::open(path)?;
    read_trees_json(BufReader::new(file))
}

/// First column of a CSV of numbers; a non-numeric first row is taken as a header.
pub fn read_number_column<T: Scalar, R: Read>(reader: R) -> Result<Vec<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let Some(field) = rec.get(0).map(str::trim) else {
            continue;
        };
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) => out.push(T::of(v)),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(Error::Parameter(format!("row {}: `{field}` is not a number", i + 1))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids() {
        let c = SweepConfig::<f64>::default();
        assert_eq!(c.delta.len(), 9);
        assert_eq!(c.delta[0], 0.01);
        assert_eq!(*c.delta.last().unwrap(), 0.05);
        assert_eq!(c.delta[4], 0.03);
        assert_eq!(c.phi_hl.len(), 26);
        assert_eq!(*c.phi_hl.last().unwrap(), 1.0);
        assert_eq!(c.phi_hl[3], 0.56);
        assert_eq!(c.iterations, 100);
        assert_eq!(c.points().len(), 9 * 26 * 4);
        c.validate().unwrap();
    }

    #[test]
    fn config_file_overrides() {
        let c: SweepConfig<f64> =
            SweepConfig::from_json_reader(r#"{"n": 200, "m": 10, "delta": [0.02], "iterations": 2}"#.as_bytes())
                .unwrap();
        assert_eq!(c.n, 200);
        assert_eq!(c.z, 8);
        assert_eq!(c.delta, vec![0.02]);
        c.validate().unwrap();
        let bad = SweepConfig::<f64> {
            delta: vec![],
            ..SweepConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
        let bad = SweepConfig::<f64> {
            iterations: 0,
            ..SweepConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = SweepConfig::<f64> {
            phi_hl: vec![1.2],
            ..SweepConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn number_column() {
        let v: Vec<f64> = read_number_column("size\n1\n2.5\n\n4\n".as_bytes()).unwrap();
        assert_eq!(v, vec![1.0, 2.5, 4.0]);
        assert!(read_number_column::<f64, _>("1\nx\n".as_bytes()).is_err());
    }
}
