//! Reference implementations used as test oracles. They work from raw
//! edge and node lists and share no code with the library internals.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rumor_core::graph::SignedGraph;
use rumor_core::metrics::{Category, RootMarker, SharingTree, TreeNode};

/// Threshold-reachability closure by repeated sweeps over the edge list:
/// seeds are in; a node joins when it passes the threshold and shares a
/// homogeneous edge with a member. Returns every member with the sweep at
/// which it joined (its shortest distance from the seeds).
pub fn closure(g: &SignedGraph<f64>, seeds: &[usize], theta: f64, delta: f64) -> BTreeMap<usize, usize> {
    let edges: Vec<(usize, usize)> = g.edges().filter(|e| e.2).map(|(u, v, _)| (u, v)).collect();
    let mut dist: BTreeMap<usize, usize> = seeds.iter().map(|&s| (s, 0)).collect();
    for round in 1.. {
        let mut added = Vec::new();
        for &(u, v) in &edges {
            for (a, b) in [(u, v), (v, u)] {
                if dist.get(&a) == Some(&(round - 1)) && !dist.contains_key(&b) && (g.opinion(b) - theta).abs() <= delta
                {
                    added.push(b);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for b in added {
            dist.entry(b).or_insert(round);
        }
    }
    dist
}

/// Random tree with shuffled node order, arbitrary ids, random σ (including
/// exact zeros and ±1) and non-decreasing timestamps along parent links.
pub fn random_tree<R: Rng>(rng: &mut R, news_id: u64) -> SharingTree<f64> {
    let n = rng.random_range(0..=25usize);
    let virtual_root = n == 0 || rng.random_bool(0.5);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut t: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let p = if i == 0 || (virtual_root && rng.random_bool(0.25)) {
            None
        } else {
            Some(rng.random_range(0..i))
        };
        let ti = match p {
            None => rng.random_range(0..5) as f64,
            Some(p) => t[p] + rng.random_range(0..4) as f64 * 0.5,
        };
        parent.push(p);
        t.push(ti);
    }
    let palette = [-1.0, -0.5, 0.0, 0.25, 1.0];
    let sigma: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                palette[rng.random_range(0..palette.len())]
            } else {
                rng.random_range(-1.0..=1.0)
            }
        })
        .collect();
    let mut ids: BTreeSet<u64> = BTreeSet::new();
    while ids.len() < n {
        ids.insert(rng.random_range(0..1_000_000));
    }
    let mut ids: Vec<u64> = ids.into_iter().collect();
    ids.shuffle(rng);
    let mut nodes: Vec<TreeNode<f64>> = (0..n)
        .map(|i| TreeNode {
            id: ids[i],
            user: rng.random_range(0..100_000),
            sigma: sigma[i],
            t: t[i],
            parent: parent[i].map(|p| ids[p]),
        })
        .collect();
    nodes.shuffle(rng);
    let category = Category::ALL[rng.random_range(0..4)];
    let root = if virtual_root {
        RootMarker::page(if rng.random_bool(0.5) { 1 } else { -1 })
    } else {
        RootMarker::user()
    };
    SharingTree::new(news_id, category, root, nodes).expect("generator builds valid trees")
}

#[derive(Debug, PartialEq)]
pub struct NaiveMetrics {
    pub size: usize,
    pub height: usize,
    pub lifetime: Option<f64>,
    pub mean_homogeneity: Option<f64>,
    pub paths: usize,
    pub homo_paths: usize,
}

fn find(nodes: &[TreeNode<f64>], id: u64) -> &TreeNode<f64> {
    nodes.iter().find(|n| n.id == id).expect("parent exists")
}

/// Metrics straight from the definitions, by walking parent links.
pub fn naive_metrics(tree: &SharingTree<f64>) -> NaiveMetrics {
    let nodes = tree.nodes();
    let root = tree.root();
    let base = usize::from(root.is_virtual);

    let chain = |n: &TreeNode<f64>| {
        let mut out = vec![n.clone()];
        let mut cur = n.clone();
        while let Some(p) = cur.parent {
            cur = find(nodes, p).clone();
            out.push(cur.clone());
        }
        out
    };

    let height = nodes.iter().map(|n| chain(n).len() - 1 + base).max().unwrap_or(0);
    let lifetime = if nodes.is_empty() {
        None
    } else {
        let lo = nodes.iter().map(|n| n.t).fold(f64::INFINITY, f64::min);
        let hi = nodes.iter().map(|n| n.t).fold(f64::NEG_INFINITY, f64::max);
        Some(hi - lo)
    };
    let mut sum = 0.0;
    let mut count = 0usize;
    for n in nodes {
        if let Some(p) = n.parent {
            sum += find(nodes, p).sigma * n.sigma;
            count += 1;
        }
    }
    let mean_homogeneity = (count > 0).then(|| sum / count as f64);

    let leaves: Vec<&TreeNode<f64>> = nodes
        .iter()
        .filter(|n| !nodes.iter().any(|m| m.parent == Some(n.id)))
        .collect();
    let homo_paths = leaves
        .iter()
        .filter(|leaf| {
            let c = chain(leaf);
            let internal = c.windows(2).all(|w| w[0].sigma * w[1].sigma > 0.0);
            let top = c.last().unwrap();
            let page = !root.is_virtual || f64::from(root.page_sign) * top.sigma > 0.0;
            internal && page
        })
        .count();
    NaiveMetrics {
        size: nodes.len(),
        height,
        lifetime,
        mean_homogeneity,
        paths: leaves.len(),
        homo_paths,
    }
}

/// Tail table `P(X >= k)` for `k = 1..=len` of the discrete power law with
/// `x_min = 1`, by direct summation; the mass beyond the table uses the
/// midpoint integral `(len + 1/2)^(1 - alpha) / (alpha - 1)`.
pub fn power_law_table(alpha: f64, len: usize) -> Vec<f64> {
    let mut table: Vec<f64> = (1..=len).map(|k| (k as f64).powf(-alpha)).collect();
    let rest = (len as f64 + 0.5).powf(1.0 - alpha) / (alpha - 1.0);
    let mut acc = rest;
    for t in table.iter_mut().rev() {
        acc += *t;
        *t = acc;
    }
    let total = table[0];
    for t in &mut table {
        *t /= total;
    }
    table
}

/// Inverse-CDF draw: the largest `k` with `P(X >= k) > u`; past the table,
/// the continuous tail is inverted.
pub fn power_law_draw<R: Rng>(table: &[f64], alpha: f64, rng: &mut R) -> u64 {
    let u: f64 = rng.random();
    let k = table.partition_point(|&p| p > u);
    if k < table.len() {
        k as u64
    } else {
        let base = table.len() as f64 + 0.5;
        let tail = table[table.len() - 1];
        (base * (u / tail).powf(-1.0 / (alpha - 1.0))).floor() as u64
    }
}
