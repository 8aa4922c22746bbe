use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;
use serde_json::json;

use rumor_core::diffusion::{generate_news, run_batch};
use rumor_core::harness::{
    aggregate, analyze, ingest_trees, read_number_column, run_sweep, simulate_iteration, unit_seed, write_grid_csv,
    GridPoint, Grouping, PointSamples,
};
use rumor_core::metrics::write_trees_json;
use rumor_core::stats::{fit_first_sharers, fit_power_law, ks_two_sample, wald_test};
use rumor_core::{FittedDistribution, SharingTree, SignedGraph, SweepConfig};

#[derive(Parser)]
#[command(name = "rumorsim", version, about = "Rumor cascades on signed small-world networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled small-world graph as JSON.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        z: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        phi_hl: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cascades of a single parameter point.
    Simulate(SimulateArgs),
    /// Run a full parameter sweep from a JSON config.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric tables, distribution curves and cross-group tests for a tree file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// `category` or `none`.
        #[arg(long, default_value = "category")]
        group: Grouping,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit IG, LN, Poisson and uniform laws to first-sharer counts.
    FitFirstSharers {
        /// CSV whose first column holds the counts.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-sample tests on CSV columns.
    StatsTest {
        #[command(subcommand)]
        test: StatsTest,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    seed: u64,
    /// Start from a named parameter set (`troll`).
    #[arg(long)]
    preset: Option<String>,
    /// Start from a sweep config file with a single grid point.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Run one batch on a stored graph instead of generating graphs.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    z: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    phi_hl: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// e.g. `ig:18.73,9.63`, `ln:2.1,1.1`, `poisson:4`, `uniform:1,40`.
    #[arg(long)]
    first_sharers: Option<FittedDistribution>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Write the sharing trees of the first iteration here.
    #[arg(long)]
    trees: Option<PathBuf>,
    /// Grid CSV with the aggregated row.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum StatsTest {
    /// Two-sample Kolmogorov–Smirnov test.
    Ks(TestArgs),
    /// Wald test on power-law exponents fitted to each sample.
    Wald {
        #[command(flatten)]
        common: TestArgs,
        #[arg(long, default_value_t = 1)]
        x_min: u64,
    },
}

#[derive(Args)]
struct TestArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    ))
}

fn read_config(path: &Path) -> Result<SweepConfig> {
    SweepConfig::from_json_reader(open(path)?).with_context(|| format!("invalid config {}", path.display()))
}

fn read_counts(path: &Path) -> Result<Vec<u64>> {
    let xs: Vec<f64> = read_number_column(open(path)?)?;
    xs.iter()
        .map(|&x| {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as u64)
            } else {
                bail!("{}: `{x}` is not a non-negative integer", path.display())
            }
        })
        .collect()
}

fn write_json_value(value: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let mut config = match (&a.preset, &a.config) {
        (Some(p), _) if p == "troll" => SweepConfig::troll_preset(),
        (Some(p), _) => bail!("unknown preset `{p}` (available: troll)"),
        (None, Some(path)) => read_config(path)?,
        (None, None) => SweepConfig {
            iterations: 1,
            ..SweepConfig::default()
        },
    };
    config.seed = a.seed;
    if let Some(v) = a.n {
        config.n = v;
    }
    if let Some(v) = a.m {
        config.m = v;
    }
    if let Some(v) = a.z {
        config.z = v;
    }
    if let Some(v) = a.r {
        config.r = vec![v];
    }
    if let Some(v) = a.phi_hl {
        config.phi_hl = vec![v];
    }
    if let Some(v) = a.delta {
        config.delta = vec![v];
    }
    if let Some(v) = a.first_sharers {
        config.first_sharers = v;
    }
    if let Some(v) = a.iterations {
        config.iterations = v;
    }

    if let Some(path) = &a.graph {
        let graph = SignedGraph::read_json(open(path)?)?;
        let Some(&delta) = config.delta.first() else {
            bail!("no delta given");
        };
        let mut news = generate_news(&config.first_sharers, config.m, a.seed)?;
        for item in &mut news {
            item.first_sharers = item.first_sharers.min(graph.node_count());
        }
        let outcomes = run_batch(&graph, &news, delta, a.seed)?;
        let point = GridPoint {
            phi_hl: graph.homogeneous_edge_count() as f64 / graph.edge_count().max(1) as f64,
            r: graph.rewiring_probability(),
            delta,
        };
        config.n = graph.node_count();
        config.z = graph.ring_degree();
        config.iterations = 1;
        let samples = PointSamples {
            sizes: outcomes.iter().map(|c| c.tree.size()).collect(),
            heights: outcomes.iter().map(|c| c.tree.height()).collect(),
            first_sharers: news.iter().map(|n| n.first_sharers).collect(),
        };
        let result = aggregate(&config, point, &samples)?;
        if let Some(t) = &a.trees {
            let trees: Vec<SharingTree> = outcomes.into_iter().map(|c| c.tree).collect();
            write_trees_json(&trees, BufWriter::new(File::create(t)?))?;
        }
        return write_grid_csv(&[result], output(a.out.as_deref())?).map_err(Into::into);
    }

    let points = config.points();
    if points.len() != 1 {
        bail!(
            "simulate runs a single grid point, config has {} (use `sweep`)",
            points.len()
        );
    }
    info!(
        "simulating n={} m={} point {:?} over {} iteration(s)",
        config.n, config.m, points[0], config.iterations
    );
    let results = run_sweep(&config)?;
    if let Some(t) = &a.trees {
        let (_, outcomes) = simulate_iteration(&config, &points[0], unit_seed(config.seed, 0, 0))?;
        let trees: Vec<SharingTree> = outcomes.into_iter().map(|c| c.tree).collect();
        write_trees_json(&trees, BufWriter::new(File::create(t)?))?;
    }
    write_grid_csv(&results, output(a.out.as_deref())?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            n,
            z,
            r,
            phi_hl,
            seed,
            out,
        } => {
            let g = SignedGraph::generate_small_world(n, z, r, seed)?.label_edges(phi_hl, seed)?;
            info!(
                "{} nodes, {} edges, {} homogeneous",
                g.node_count(),
                g.edge_count(),
                g.homogeneous_edge_count()
            );
            let mut w = output(out.as_deref())?;
            g.write_json(&mut w)?;
            w.flush()?;
        }
        Command::Simulate(args) => simulate(args)?,
        Command::Sweep {
            config,
            seed,
            iterations,
            out,
        } => {
            let mut c = match &config {
                Some(path) => read_config(path)?,
                None => SweepConfig::default(),
            };
            c.seed = seed;
            if let Some(it) = iterations {
                c.iterations = it;
            }
            let out = out.or_else(|| c.output.clone());
            info!(
                "sweeping {} grid points x {} iterations",
                c.points().len(),
                c.iterations
            );
            let results = run_sweep(&c)?;
            write_grid_csv(&results, output(out.as_deref())?)?;
        }
        Command::Analyze {
            input,
            group,
            alpha,
            out,
        } => {
            let trees: Vec<SharingTree> =
                ingest_trees(&input).with_context(|| format!("invalid tree file {}", input.display()))?;
            let report = analyze(&trees, group, alpha)?;
            report.write_dir(&trees, &out)?;
            for c in &report.comparisons {
                println!(
                    "{} {} {} vs {}: statistic {} threshold {} reject {}",
                    c.test, c.quantity, c.group_a, c.group_b, c.statistic, c.threshold, c.reject
                );
            }
        }
        Command::FitFirstSharers { input, seed, out } => {
            let counts = read_counts(&input)?;
            let fits = fit_first_sharers::<f64>(&counts, seed)?;
            for f in &fits.families {
                match (&f.fit, &f.note) {
                    (Some(d), _) => eprintln!("{}: {d}", f.family.label()),
                    (None, Some(note)) => eprintln!("{}: not fitted ({note})", f.family.label()),
                    (None, None) => {}
                }
            }
            fits.write_table_csv(output(out.as_deref())?)?;
        }
        Command::StatsTest { test } => match test {
            StatsTest::Ks(t) => {
                let a: Vec<f64> = read_number_column(open(&t.a)?)?;
                let b: Vec<f64> = read_number_column(open(&t.b)?)?;
                let r = ks_two_sample(&a, &b, t.alpha)?;
                write_json_value(
                    &json!({
                        "test": "ks",
                        "D": r.statistic,
                        "D_alpha": r.critical_value,
                        "p_value": r.p_value,
                        "reject": r.reject,
                        "n1": r.n1,
                        "n2": r.n2,
                    }),
                    t.out.as_deref(),
                )?;
            }
            StatsTest::Wald { common: t, x_min } => {
                let fa = fit_power_law::<f64>(&read_counts(&t.a)?, x_min)?;
                let fb = fit_power_law::<f64>(&read_counts(&t.b)?, x_min)?;
                let r = wald_test(&fa, &fb, t.alpha)?;
                write_json_value(
                    &json!({
                        "test": "wald",
                        "alpha_a": fa.alpha,
                        "alpha_b": fb.alpha,
                        "variance_a": fa.variance,
                        "W": r.statistic,
                        "p_value": r.p_value,
                        "reject": r.reject,
                    }),
                    t.out.as_deref(),
                )?;
            }
        },
    }
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
