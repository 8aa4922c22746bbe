use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{param, Error, Result};
use crate::metrics::{write_metrics_csv, PathClass, SharingTree, TreeMetrics};
use crate::scalar::Scalar;
use crate::stats::{
    binned_mean, empirical_ccdf, empirical_cdf, empirical_pdf, fit_power_law, ks_two_sample, wald_test, Binning,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    Category,
    None,
}

impl FromStr for Grouping {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "category" => Ok(Self::Category),
            "none" | "all" => Ok(Self::None),
            _ => Err(param(format!("unknown grouping `{s}` (expected category or none)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve<T> {
    pub quantity: &'static str,
    pub points: Vec<(T, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport<T> {
    pub group: String,
    pub trees: usize,
    pub curves: Vec<Curve<T>>,
}

impl<T: Scalar> GroupReport<T> {
    pub fn curve(&self, quantity: &str) -> Option<&Curve<T>> {
        self.curves.iter().find(|c| c.quantity == quantity)
    }
}

/// One two-sample test between groups (or between two samples of one group).
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison<T> {
    pub quantity: String,
    pub group_a: String,
    pub group_b: String,
    pub test: &'static str,
    pub statistic: T,
    /// KS critical value, or Wald p-value.
    pub threshold: T,
    pub reject: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport<T> {
    pub metrics: Vec<TreeMetrics<T>>,
    pub groups: Vec<GroupReport<T>>,
    pub comparisons: Vec<Comparison<T>>,
    pub warnings: Vec<String>,
}

const LINEAR_BINS: usize = 30;
const LOG_BINS: usize = 20;

struct Columns<T> {
    sizes: Vec<T>,
    heights: Vec<T>,
    lifetimes: Vec<T>,
    homogeneity: Vec<T>,
    paths: Vec<T>,
    homo_paths: Vec<T>,
    path_lengths: Vec<T>,
    homo_path_lengths: Vec<T>,
    size_lifetime: (Vec<T>, Vec<T>),
    homogeneity_size: (Vec<T>, Vec<T>),
}

fn columns<T: Scalar>(trees: &[&SharingTree<T>], metrics: &[&TreeMetrics<T>]) -> Columns<T> {
    let nonempty = || metrics.iter().filter(|m| m.size > 0);
    let mut c = Columns {
        sizes: nonempty().map(|m| T::of_usize(m.size)).collect(),
        heights: nonempty().map(|m| T::of_usize(m.height)).collect(),
        lifetimes: metrics.iter().filter_map(|m| m.lifetime).collect(),
        homogeneity: metrics.iter().filter_map(|m| m.mean_homogeneity).collect(),
        paths: nonempty().map(|m| T::of_usize(m.sharing_paths)).collect(),
        homo_paths: nonempty().map(|m| T::of_usize(m.homogeneous_paths)).collect(),
        path_lengths: Vec::new(),
        homo_path_lengths: Vec::new(),
        size_lifetime: (Vec::new(), Vec::new()),
        homogeneity_size: (Vec::new(), Vec::new()),
    };
    for m in metrics {
        if let Some(l) = m.lifetime {
            c.size_lifetime.0.push(T::of_usize(m.size));
            c.size_lifetime.1.push(l);
        }
        if let Some(h) = m.mean_homogeneity {
            c.homogeneity_size.0.push(h);
            c.homogeneity_size.1.push(T::of_usize(m.size));
        }
    }
    for t in trees {
        for p in t.path_profile() {
            c.path_lengths.push(T::of_usize(p.length));
            if p.class == PathClass::Homogeneous {
                c.homo_path_lengths.push(T::of_usize(p.length));
            }
        }
    }
    c
}

fn push_curve<T: Scalar>(
    curves: &mut Vec<Curve<T>>,
    warnings: &mut Vec<String>,
    group: &str,
    quantity: &'static str,
    points: Result<Vec<(T, T)>>,
) {
    match points {
        Ok(points) => curves.push(Curve { quantity, points }),
        Err(e) => warnings.push(format!("group {group}: {quantity} skipped ({e})")),
    }
}

fn group_curves<T: Scalar>(group: &str, c: &Columns<T>, warnings: &mut Vec<String>) -> Vec<Curve<T>> {
    let mut out = Vec::new();
    let w = warnings;
    push_curve(
        &mut out,
        w,
        group,
        "lifetime_pdf",
        empirical_pdf(&c.lifetimes, Binning::Linear(LINEAR_BINS)),
    );
    push_curve(&mut out, w, group, "size_ccdf", empirical_ccdf(&c.sizes));
    push_curve(&mut out, w, group, "height_cdf", empirical_cdf(&c.heights));
    push_curve(
        &mut out,
        w,
        group,
        "homogeneity_pdf",
        empirical_pdf(&c.homogeneity, Binning::Linear(LINEAR_BINS)),
    );
    push_curve(
        &mut out,
        w,
        group,
        "lifetime_vs_size",
        binned_mean(&c.size_lifetime.0, &c.size_lifetime.1, Binning::Log(LOG_BINS)),
    );
    push_curve(
        &mut out,
        w,
        group,
        "size_vs_homogeneity",
        binned_mean(
            &c.homogeneity_size.0,
            &c.homogeneity_size.1,
            Binning::Linear(LINEAR_BINS),
        ),
    );
    push_curve(&mut out, w, group, "paths_ccdf", empirical_ccdf(&c.paths));
    push_curve(&mut out, w, group, "homo_paths_ccdf", empirical_ccdf(&c.homo_paths));
    push_curve(
        &mut out,
        w,
        group,
        "path_length_pmf",
        empirical_pdf(&c.path_lengths, Binning::Integer),
    );
    push_curve(
        &mut out,
        w,
        group,
        "homo_path_length_pmf",
        empirical_pdf(&c.homo_path_lengths, Binning::Integer),
    );
    out
}

fn ks<T: Scalar>(
    quantity: &str,
    a: (&str, &[T]),
    b: (&str, &[T]),
    alpha: T,
    out: &mut Vec<Comparison<T>>,
    warnings: &mut Vec<String>,
) {
    match ks_two_sample(a.1, b.1, alpha) {
        Ok(r) => out.push(Comparison {
            quantity: quantity.to_string(),
            group_a: a.0.to_string(),
            group_b: b.0.to_string(),
            test: "ks",
            statistic: r.statistic,
            threshold: r.critical_value,
            reject: r.reject,
        }),
        Err(e) => warnings.push(format!("KS on {quantity} for {} vs {} skipped ({e})", a.0, b.0)),
    }
}

fn as_counts<T: Scalar>(xs: &[T]) -> Vec<u64> {
    xs.iter().filter_map(|x| x.to_u64()).collect()
}

/// Per-group curves plus KS and Wald comparisons at level `alpha`.
///
/// Groups without a non-empty tree are reported as warnings and skipped.
pub fn analyze<T: Scalar>(trees: &[SharingTree<T>], grouping: Grouping, alpha: T) -> Result<AnalysisReport<T>> {
    if trees.is_empty() {
        return Err(param("no trees to analyze"));
    }
    let metrics: Vec<TreeMetrics<T>> = trees.iter().map(SharingTree::metrics).collect();
    let mut buckets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, m) in metrics.iter().enumerate() {
        let key = match grouping {
            Grouping::Category => m.category.to_string(),
            Grouping::None => "all".to_string(),
        };
        buckets.entry(key).or_default().push(i);
    }

    let mut warnings = Vec::new();
    let mut groups = Vec::new();
    let mut cols = Vec::new();
    for (name, idx) in &buckets {
        if idx.iter().all(|&i| metrics[i].size == 0) {
            warnings.push(format!("group {name} has no non-empty trees; skipped"));
            continue;
        }
        let t: Vec<&SharingTree<T>> = idx.iter().map(|&i| &trees[i]).collect();
        let m: Vec<&TreeMetrics<T>> = idx.iter().map(|&i| &metrics[i]).collect();
        let c = columns(&t, &m);
        groups.push(GroupReport {
            group: name.clone(),
            trees: idx.len(),
            curves: group_curves(name, &c, &mut warnings),
        });
        cols.push((name.clone(), c));
    }

    let mut comparisons = Vec::new();
    for (name, c) in &cols {
        ks(
            "paths_vs_homo_paths",
            (name, &c.paths),
            (name, &c.homo_paths),
            alpha,
            &mut comparisons,
            &mut warnings,
        );
    }
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let (a, ca) = (&cols[i].0, &cols[i].1);
            let (b, cb) = (&cols[j].0, &cols[j].1);
            ks(
                "size",
                (a, &ca.sizes),
                (b, &cb.sizes),
                alpha,
                &mut comparisons,
                &mut warnings,
            );
            ks(
                "lifetime",
                (a, &ca.lifetimes),
                (b, &cb.lifetimes),
                alpha,
                &mut comparisons,
                &mut warnings,
            );
            ks(
                "height",
                (a, &ca.heights),
                (b, &cb.heights),
                alpha,
                &mut comparisons,
                &mut warnings,
            );
            let fits = fit_power_law::<T>(&as_counts(&ca.sizes), 1)
                .and_then(|fa| fit_power_law::<T>(&as_counts(&cb.sizes), 1).map(|fb| (fa, fb)));
            match fits.and_then(|(fa, fb)| wald_test(&fa, &fb, alpha)) {
                Ok(r) => comparisons.push(Comparison {
                    quantity: "size_power_law_exponent".into(),
                    group_a: a.clone(),
                    group_b: b.clone(),
                    test: "wald",
                    statistic: r.statistic,
                    threshold: r.p_value,
                    reject: r.reject,
                }),
                Err(e) => warnings.push(format!("Wald test on size exponent for {a} vs {b} skipped ({e})")),
            }
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(AnalysisReport {
        metrics,
        groups,
        comparisons,
        warnings,
    })
}

impl<T: Scalar> AnalysisReport<T> {
    /// Writes `metrics.csv`, one `<group>_<quantity>.csv` table of `(x, y)`
    /// per curve, `comparisons.csv` and `warnings.txt` into `dir`, creating
    /// it if needed.
    pub fn write_dir(&self, trees: &[SharingTree<T>], dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_metrics_csv(trees, BufWriter::new(File::create(dir.join("metrics.csv"))?))?;

        for g in &self.groups {
            for c in &g.curves {
                let mut w = csv::Writer::from_path(dir.join(format!("{}_{}.csv", g.group, c.quantity)))?;
                w.write_record(["x", "y"])?;
                for (x, y) in &c.points {
                    w.write_record([x.to_string(), y.to_string()])?;
                }
                w.flush()?;
            }
        }

        let mut w = csv::Writer::from_path(dir.join("comparisons.csv"))?;
        w.write_record([
            "quantity",
            "group_a",
            "group_b",
            "test",
            "statistic",
            "threshold",
            "reject",
        ])?;
        for c in &self.comparisons {
            w.write_record([
                c.quantity.as_str(),
                &c.group_a,
                &c.group_b,
                c.test,
                &c.statistic.to_string(),
                &c.threshold.to_string(),
                &c.reject.to_string(),
            ])?;
        }
        w.flush()?;

        let mut f = BufWriter::new(File::create(dir.join("warnings.txt"))?);
        for line in &self.warnings {
            writeln!(f, "{line}")?;
        }
        f.flush()?;
        Ok(())
    }
}
