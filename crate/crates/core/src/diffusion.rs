//! Threshold cascades on the homogeneous part of a signed graph.
//!
//! Each news item starts from its first sharers, picked uniformly without
//! replacement, who share unconditionally in round 0. In every later round a
//! user who has not yet shared the item and is linked by a homogeneous edge
//! to a sharer of the previous round shares it iff their opinion lies within
//! `delta` of the item's fitness. The cascade stops at the first round that
//! adds nobody.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::SignedGraph;
use crate::metrics::{Category, RootMarker, SharingTree, TreeNode};
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream};
use crate::stats::{sample_first_sharers, FittedDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewsItem<T> {
    pub id: u64,
    pub fitness: T,
    pub first_sharers: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CascadeOutcome<T> {
    pub news_id: u64,
    pub tree: SharingTree<T>,
    /// Index of the last round that added a sharer; 0 for seed-only cascades.
    pub rounds: usize,
}

impl<T: Scalar> CascadeOutcome<T> {
    /// Graph nodes that shared the item, in order of sharing.
    pub fn sharers(&self) -> impl Iterator<Item = usize> + '_ {
        self.tree.nodes().iter().map(|n| n.user as usize)
    }
}

/// `m` items with uniform fitness and first-sharer counts drawn from `dist`.
pub fn generate_news<T: Scalar>(dist: &FittedDistribution<T>, m: usize, seed: u64) -> Result<Vec<NewsItem<T>>> {
    let counts = sample_first_sharers(dist, m, seed)?;
    let mut rng = rng_from_seed(derive_seed(seed, &[stream::FITNESS]));
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, first_sharers)| NewsItem {
            id: i as u64,
            fitness: T::unit(&mut rng),
            first_sharers,
        })
        .collect())
}

/// Runs one cascade. The tree hangs off a virtual page root; every sharer
/// carries polarization +1 and its round as timestamp. When several sharers
/// of one round could have passed the item to a new user, the parent is
/// drawn uniformly among them.
pub fn run_cascade<T: Scalar>(
    g: &SignedGraph<T>,
    news: &NewsItem<T>,
    delta: T,
    seed: u64,
) -> Result<CascadeOutcome<T>> {
    if !(delta >= T::zero() && delta <= T::one()) {
        return Err(param(format!("sharing threshold {delta} outside [0, 1]")));
    }
    let n = g.node_count();
    if news.first_sharers > n {
        return Err(Error::Seeding {
            requested: news.first_sharers,
            nodes: n,
        });
    }
    let mut rng = rng_from_seed(seed);
    let seeds = rand::seq::index::sample(&mut rng, n, news.first_sharers).into_vec();

    let theta = news.fitness;
    let mut position: HashMap<usize, usize> = HashMap::with_capacity(seeds.len() * 2);
    let mut nodes: Vec<TreeNode<T>> = Vec::with_capacity(seeds.len() * 2);
    for &s in &seeds {
        position.insert(s, nodes.len());
        nodes.push(TreeNode {
            id: nodes.len() as u64,
            user: s as u64,
            sigma: T::one(),
            t: T::zero(),
            parent: None,
        });
    }

    let mut frontier = 0..nodes.len();
    let mut round = 0usize;
    // Newly reached users in discovery order, with (chosen parent, eligible parents seen).
    let mut order: Vec<usize> = Vec::new();
    let mut pending: HashMap<usize, (usize, u32)> = HashMap::new();
    loop {
        for idx in frontier.clone() {
            let u = nodes[idx].user as usize;
            for v in g.homogeneous_neighbours(u) {
                if position.contains_key(&v) || (g.opinion(v) - theta).abs() > delta {
                    continue;
                }
                match pending.get_mut(&v) {
                    None => {
                        pending.insert(v, (idx, 1));
                        order.push(v);
                    }
                    Some((parent, seen)) => {
                        *seen += 1;
                        if rng.random_range(0..*seen) == 0 {
                            *parent = idx;
                        }
                    }
                }
            }
        }
        if order.is_empty() {
            break;
        }
        round += 1;
        let start = nodes.len();
        let t = T::of_usize(round);
        for v in order.drain(..) {
            let (parent, _) = pending[&v];
            position.insert(v, nodes.len());
            nodes.push(TreeNode {
                id: nodes.len() as u64,
                user: v as u64,
                sigma: T::one(),
                t,
                parent: Some(parent as u64),
            });
        }
        pending.clear();
        frontier = start..nodes.len();
    }

    let tree = SharingTree::new(news.id, Category::Synthetic, RootMarker::page(1), nodes)?;
    Ok(CascadeOutcome {
        news_id: news.id,
        tree,
        rounds: round,
    })
}

/// Seed of the `index`-th cascade of a batch.
pub fn cascade_seed(seed: u64, index: usize) -> u64 {
    derive_seed(seed, &[stream::CASCADES, index as u64])
}

/// Cascades for every item, run in parallel, returned in input order.
/// Item `i` uses [`cascade_seed`]`(seed, i)`, so output is independent of
/// scheduling.
pub fn run_batch<T: Scalar>(
    g: &SignedGraph<T>,
    news: &[NewsItem<T>],
    delta: T,
    seed: u64,
) -> Result<Vec<CascadeOutcome<T>>> {
    news.par_iter()
        .enumerate()
        .map(|(i, item)| run_cascade(g, item, delta, cascade_seed(seed, i)))
        .collect()
}
