//! Percolation model of rumor spreading on signed small-world networks.
//!
//! Users sit on a Watts–Strogatz graph with uniform opinions in `[0, 1]`;
//! a fraction `phi_HL` of the links is homogeneous and only those carry
//! news. An item with fitness `theta` spreads to a neighbour whose opinion
//! lies within `delta` of `theta`. The crate also computes sharing-tree
//! metrics, fits first-sharer and power-law distributions, runs KS and Wald
//! tests, and evaluates the branching-process predictions.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

// `!(x >= 0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branching;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod numeric;
pub mod scalar;
pub mod seeding;
pub mod stats;

pub use error::{Error, Result};
pub use metrics::{Category, RootMarker, TreeError};
pub use scalar::Scalar;
pub use seeding::{derive_seed, rng_from_seed, ModelRng};

pub type SignedGraph = graph::SignedGraph<f64>;
pub type SharingTree = metrics::SharingTree<f64>;
pub type TreeNode = metrics::TreeNode<f64>;
pub type TreeMetrics = metrics::TreeMetrics<f64>;
pub type NewsItem = diffusion::NewsItem<f64>;
pub type CascadeOutcome = diffusion::CascadeOutcome<f64>;
pub type FittedDistribution = stats::FittedDistribution<f64>;
pub type PowerLawFit = stats::PowerLawFit<f64>;
pub type SummaryStats = stats::SummaryStats<f64>;
pub type SweepConfig = harness::SweepConfig<f64>;
pub type SweepResult = harness::SweepResult<f64>;

pub type SignedGraphF32 = graph::SignedGraph<f32>;
pub type SharingTreeF32 = metrics::SharingTree<f32>;
pub type SweepConfigF32 = harness::SweepConfig<f32>;
