//! Watts–Strogatz small-world graphs with per-node opinions and per-edge
//! homogeneity labels.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{param, Result};
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream};

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("node {0} listed out of order or duplicated (expected id {1})")]
    NodeId(usize, usize),
    #[error("node {node} has opinion {opinion} outside [0, 1]")]
    Opinion { node: usize, opinion: f64 },
    #[error("edge ({0}, {1}) references a node outside the graph")]
    EdgeEndpoint(usize, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge count {found} differs from n*z/2 = {expected}")]
    EdgeCount { found: usize, expected: usize },
    #[error("node count {found} differs from declared n = {expected}")]
    NodeCount { found: usize, expected: usize },
}

/// Undirected simple graph whose edges are flagged homogeneous or not.
///
/// Edges are stored once as `(u, v)` with `u < v`. Only homogeneous edges
/// carry news in the diffusion model.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph<T> {
    z: usize,
    rewiring: T,
    opinions: Vec<T>,
    edges: Vec<(u32, u32)>,
    homogeneous: Vec<bool>,
    incidence: Vec<Vec<u32>>,
}

fn normalized(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl<T: Scalar> SignedGraph<T> {
    /// Ring lattice of `n` nodes, each tied to its `z` nearest neighbours,
    /// followed by one-endpoint rewiring of every edge with probability `r`.
    ///
    /// Opinions are i.i.d. uniform on `[0, 1]`; every edge starts homogeneous.
    pub fn generate_small_world(n: usize, z: usize, r: T, seed: u64) -> Result<Self> {
        if z < 2 || !z.is_multiple_of(2) {
            return Err(param(format!("ring degree z = {z} must be even and >= 2")));
        }
        if n <= z {
            return Err(param(format!("node count n = {n} must exceed z = {z}")));
        }
        if n > u32::MAX as usize {
            return Err(param(format!("node count n = {n} too large")));
        }
        if !(r >= T::zero() && r <= T::one()) {
            return Err(param(format!("rewiring probability {r} outside [0, 1]")));
        }

        let half = z / 2;
        let mut neighbours: Vec<Vec<u32>> = vec![Vec::with_capacity(z); n];
        let mut edges = Vec::with_capacity(n * half);
        for j in 1..=half {
            for u in 0..n {
                let v = (u + j) % n;
                neighbours[u].push(v as u32);
                neighbours[v].push(u as u32);
                edges.push((u as u32, v as u32));
            }
        }

        // Edge (u, u + j) lives at index (j - 1) * n + u; keep u, re-target v.
        let mut rng = rng_from_seed(derive_seed(seed, &[stream::GRAPH]));
        for j in 1..=half {
            for u in 0..n {
                if T::unit(&mut rng) >= r {
                    continue;
                }
                if neighbours[u].len() >= n - 1 {
                    continue;
                }
                let idx = (j - 1) * n + u;
                let (_, v) = edges[idx];
                let w = loop {
                    let w = rng.random_range(0..n as u32);
                    if w as usize != u && !neighbours[u].contains(&w) {
                        break w;
                    }
                };
                let u32_ = u as u32;
                neighbours[u].retain(|&x| x != v);
                neighbours[v as usize].retain(|&x| x != u32_);
                neighbours[u].push(w);
                neighbours[w as usize].push(u32_);
                edges[idx] = (u32_, w);
            }
        }

        let edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| normalized(a, b)).collect();
        let mut orng = rng_from_seed(derive_seed(seed, &[stream::OPINIONS]));
        let opinions = (0..n).map(|_| T::unit(&mut orng)).collect();
        let homogeneous = vec![true; edges.len()];
        Ok(Self::assemble(z, r, opinions, edges, homogeneous))
    }

    fn assemble(z: usize, rewiring: T, opinions: Vec<T>, edges: Vec<(u32, u32)>, homogeneous: Vec<bool>) -> Self {
        let mut incidence = vec![Vec::new(); opinions.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incidence[u as usize].push(i as u32);
            incidence[v as usize].push(i as u32);
        }
        Self {
            z,
            rewiring,
            opinions,
            edges,
            homogeneous,
            incidence,
        }
    }

    /// Copy of the graph with exactly `round(phi_hl * M)` edges, chosen
    /// uniformly without replacement, flagged homogeneous.
    ///
    /// The selection is a prefix of a seed-determined permutation, so for a
    /// fixed seed the homogeneous sets are nested in `phi_hl`.
    pub fn label_edges(&self, phi_hl: T, seed: u64) -> Result<Self> {
        if !(phi_hl >= T::zero() && phi_hl <= T::one()) {
            return Err(param(format!("phi_HL = {phi_hl} outside [0, 1]")));
        }
        let m = self.edges.len();
        let count = homogeneous_count(phi_hl, m);
        let mut order: Vec<usize> = (0..m).collect();
        let mut rng = rng_from_seed(derive_seed(seed, &[stream::LABELS]));
        order.shuffle(&mut rng);
        let mut homogeneous = vec![false; m];
        for &e in &order[..count] {
            homogeneous[e] = true;
        }
        let mut out = self.clone();
        out.homogeneous = homogeneous;
        Ok(out)
    }

    pub fn node_count(&self) -> usize {
        self.opinions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ring_degree(&self) -> usize {
        self.z
    }

    pub fn rewiring_probability(&self) -> T {
        self.rewiring
    }

    pub fn opinions(&self) -> &[T] {
        &self.opinions
    }

    pub fn opinion(&self, node: usize) -> T {
        self.opinions[node]
    }

    /// `(u, v, homogeneous)` with `u < v`, in storage order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.edges
            .iter()
            .zip(&self.homogeneous)
            .map(|(&(u, v), &h)| (u as usize, v as usize, h))
    }

    pub fn homogeneous_edge_count(&self) -> usize {
        self.homogeneous.iter().filter(|&&h| h).count()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.incidence[node].len()
    }

    pub fn neighbours(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[node]
            .iter()
            .map(move |&e| self.other_end(e as usize, node))
    }

    /// Neighbours reachable from `node` along homogeneous edges.
    pub fn homogeneous_neighbours(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[node]
            .iter()
            .filter(|&&e| self.homogeneous[e as usize])
            .map(move |&e| self.other_end(e as usize, node))
    }

    fn other_end(&self, edge: usize, node: usize) -> usize {
        let (u, v) = self.edges[edge];
        if u as usize == node {
            v as usize
        } else {
            u as usize
        }
    }

    /// `Some(homogeneous)` when `u` and `v` are adjacent.
    pub fn edge_sign(&self, u: usize, v: usize) -> Option<bool> {
        let key = normalized(u as u32, v as u32);
        self.incidence
            .get(u)?
            .iter()
            .find(|&&e| self.edges[e as usize] == key)
            .map(|&e| self.homogeneous[e as usize])
    }

    /// Empirical degree distribution as `(k, fraction of nodes)` pairs, ascending in `k`.
    pub fn degree_distribution(&self) -> Vec<(usize, T)> {
        let mut counts = BTreeMap::new();
        for node in 0..self.node_count() {
            *counts.entry(self.degree(node)).or_insert(0usize) += 1;
        }
        let n = T::of_usize(self.node_count());
        counts.into_iter().map(|(k, c)| (k, T::of_usize(c) / n)).collect()
    }

    pub fn to_doc(&self) -> GraphDoc<T> {
        GraphDoc {
            n: self.node_count(),
            z: self.z,
            r: self.rewiring,
            nodes: self
                .opinions
                .iter()
                .enumerate()
                .map(|(id, &opinion)| NodeDoc { id, opinion })
                .collect(),
            edges: self
                .edges()
                .map(|(u, v, homogeneous)| EdgeDoc { u, v, homogeneous })
                .collect(),
        }
    }

    /// Validates every graph invariant while importing.
    pub fn from_doc(doc: GraphDoc<T>) -> Result<Self, GraphError> {
        if doc.nodes.len() != doc.n {
            return Err(GraphError::NodeCount {
                found: doc.nodes.len(),
                expected: doc.n,
            });
        }
        let mut opinions = Vec::with_capacity(doc.n);
        for (expected, node) in doc.nodes.iter().enumerate() {
            if node.id != expected {
                return Err(GraphError::NodeId(node.id, expected));
            }
            if !(node.opinion >= T::zero() && node.opinion <= T::one()) {
                return Err(GraphError::Opinion {
                    node: node.id,
                    opinion: node.opinion.to_f64_lossy(),
                });
            }
            opinions.push(node.opinion);
        }
        let expected_m = doc.n * doc.z / 2;
        if doc.edges.len() != expected_m {
            return Err(GraphError::EdgeCount {
                found: doc.edges.len(),
                expected: expected_m,
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(doc.edges.len());
        let mut edges = Vec::with_capacity(doc.edges.len());
        let mut homogeneous = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            if e.u >= doc.n || e.v >= doc.n {
                return Err(GraphError::EdgeEndpoint(e.u, e.v));
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            let key = normalized(e.u as u32, e.v as u32);
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(e.u, e.v));
            }
            edges.push(key);
            homogeneous.push(e.homogeneous);
        }
        Ok(Self::assemble(doc.z, doc.r, opinions, edges, homogeneous))
    }

    pub fn write_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer(writer, &self.to_doc())?;
        Ok(())
    }

    pub fn read_json<R: Read>(reader: R) -> Result<Self> {
        let doc: GraphDoc<T> = serde_json::from_reader(reader)?;
        Ok(Self::from_doc(doc)?)
    }
}

/// `round(phi * m)` with halves rounded away from zero.
pub fn homogeneous_count<T: Scalar>(phi: T, m: usize) -> usize {
    (phi * T::of_usize(m)).round().to_usize().unwrap_or(0).min(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc<T> {
    pub n: usize,
    pub z: usize,
    pub r: T,
    pub nodes: Vec<NodeDoc<T>>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDoc<T> {
    pub id: usize,
    pub opinion: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    pub homogeneous: bool,
}
