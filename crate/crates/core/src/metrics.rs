//! Sharing trees and the per-tree cascade metrics: size, height, lifetime,
//! edge homogeneity and sharing-path classification.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Content class of a news item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Science,
    Conspiracy,
    Troll,
    Synthetic,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::Science,
        Category::Conspiracy,
        Category::Troll,
        Category::Synthetic,
    ];

    /// Sign of the publishing page's category. Polarization measures
    /// conspiracy-likeness, so science pages sit at -1.
    pub fn default_page_sign(self) -> i8 {
        match self {
            Category::Science => -1,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Science => "science",
            Category::Conspiracy => "conspiracy",
            Category::Troll => "troll",
            Category::Synthetic => "synthetic",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown category `{s}`")))
    }
}

/// Like counts of a single user on the two content classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub user_id: u64,
    pub likes_conspiracy: u64,
    pub likes_science: u64,
}

impl UserProfile {
    /// Fraction of the user's likes that went to conspiracy content.
    pub fn conspiracy_fraction<T: Scalar>(&self) -> Result<T> {
        let total = self.likes_conspiracy + self.likes_science;
        if total == 0 {
            return Err(Error::UndefinedPolarization);
        }
        Ok(T::of(self.likes_conspiracy as f64) / T::of(total as f64))
    }

    pub fn polarization<T: Scalar>(&self) -> Result<T> {
        self.conspiracy_fraction().map(polarization_from_fraction)
    }
}

pub fn user_polarization<T: Scalar>(profile: &UserProfile) -> Result<T> {
    profile.polarization()
}

/// `2 rho - 1`.
pub fn polarization_from_fraction<T: Scalar>(rho: T) -> T {
    T::of(2.0) * rho - T::one()
}

pub fn edge_homogeneity<T: Scalar>(sigma_i: T, sigma_j: T) -> T {
    sigma_i * sigma_j
}

/// Strictly positive homogeneity only; zero counts as non-homogeneous.
pub fn is_homogeneous<T: Scalar>(sigma_ij: T) -> bool {
    sigma_ij > T::zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootMarker {
    /// `true` when the root is the publishing page rather than a user.
    #[serde(rename = "virtual")]
    pub is_virtual: bool,
    pub page_sign: i8,
}

impl RootMarker {
    pub fn page(page_sign: i8) -> Self {
        Self {
            is_virtual: true,
            page_sign,
        }
    }

    pub fn user() -> Self {
        Self {
            is_virtual: false,
            page_sign: 1,
        }
    }
}

/// One share event. `t` holds hours for observed data and the round index
/// for simulated cascades.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode<T> {
    pub id: u64,
    pub user: u64,
    pub sigma: T,
    pub t: T,
    pub parent: Option<u64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("tree {news_id}: page sign {sign} is not +1 or -1")]
    PageSign { news_id: u64, sign: i8 },
    #[error("tree {news_id}: node id {node} appears twice")]
    DuplicateNode { news_id: u64, node: u64 },
    #[error("tree {news_id}: node {node} has polarization {sigma} outside [-1, 1]")]
    SigmaOutOfRange { news_id: u64, node: u64, sigma: f64 },
    #[error("tree {news_id}: node {node} has a non-finite timestamp")]
    Timestamp { news_id: u64, node: u64 },
    #[error("tree {news_id}: node {node} references missing parent {parent}")]
    OrphanParent { news_id: u64, node: u64, parent: u64 },
    #[error("tree {news_id}: parent links of node {node} form a cycle")]
    Cycle { news_id: u64, node: u64 },
    #[error("tree {news_id}: a user-rooted tree needs exactly one parentless node, found {found}")]
    RootCount { news_id: u64, found: usize },
    #[error("tree {news_id}: node {node} shares before its parent")]
    TimeOrder { news_id: u64, node: u64 },
}

/// Oriented tree of successive shares of one news item.
///
/// With a virtual (page) root every parentless node is a first sharer at
/// depth 1 and the page itself is not counted. With a user root there is
/// exactly one parentless node and it sits at depth 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TreeDoc<T>", into = "TreeDoc<T>")]
#[serde(bound = "T: Scalar")]
pub struct SharingTree<T> {
    news_id: u64,
    category: Category,
    root: RootMarker,
    nodes: Vec<TreeNode<T>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct TreeDoc<T> {
    news_id: u64,
    category: Category,
    root: RootMarker,
    nodes: Vec<TreeNode<T>>,
}

impl<T: Scalar> TryFrom<TreeDoc<T>> for SharingTree<T> {
    type Error = TreeError;

    fn try_from(doc: TreeDoc<T>) -> Result<Self, TreeError> {
        SharingTree::new(doc.news_id, doc.category, doc.root, doc.nodes)
    }
}

impl<T: Scalar> From<SharingTree<T>> for TreeDoc<T> {
    fn from(t: SharingTree<T>) -> Self {
        TreeDoc {
            news_id: t.news_id,
            category: t.category,
            root: t.root,
            nodes: t.nodes,
        }
    }
}

/// Relation of a root-to-leaf path to the homogeneity rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    /// Every edge homogeneous.
    Homogeneous,
    /// Only the first edge is discordant: a (k-1)-homogeneous path.
    FirstStepDiscordant,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathProfile {
    pub leaf: u64,
    /// Number of edges, counting the page edge under a virtual root.
    pub length: usize,
    pub class: PathClass,
}

/// Every metric of one tree. Undefined quantities are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeMetrics<T> {
    pub news_id: u64,
    pub category: Category,
    pub size: usize,
    pub height: usize,
    pub lifetime: Option<T>,
    pub mean_homogeneity: Option<T>,
    pub sharing_paths: usize,
    pub homogeneous_paths: usize,
}

impl<T: Scalar> SharingTree<T> {
    pub fn new(news_id: u64, category: Category, root: RootMarker, nodes: Vec<TreeNode<T>>) -> Result<Self, TreeError> {
        if root.page_sign != 1 && root.page_sign != -1 {
            return Err(TreeError::PageSign {
                news_id,
                sign: root.page_sign,
            });
        }
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id, i).is_some() {
                return Err(TreeError::DuplicateNode { news_id, node: node.id });
            }
            if !(node.sigma >= -T::one() && node.sigma <= T::one()) {
                return Err(TreeError::SigmaOutOfRange {
                    news_id,
                    node: node.id,
                    sigma: node.sigma.to_f64_lossy(),
                });
            }
            if !node.t.is_finite() {
                return Err(TreeError::Timestamp { news_id, node: node.id });
            }
        }
        let mut parent = Vec::with_capacity(nodes.len());
        for node in &nodes {
            parent.push(match node.parent {
                None => None,
                Some(p) => Some(*index.get(&p).ok_or(TreeError::OrphanParent {
                    news_id,
                    node: node.id,
                    parent: p,
                })?),
            });
        }

        let roots = parent.iter().filter(|p| p.is_none()).count();
        let base = usize::from(root.is_virtual);

        // Colour walk: reaching a node still on the current chain is a cycle.
        let mut colour = vec![0u8; nodes.len()];
        let mut chain = Vec::new();
        for start in 0..nodes.len() {
            let mut cur = Some(start);
            while let Some(i) = cur {
                match colour[i] {
                    0 => {
                        colour[i] = 1;
                        chain.push(i);
                        cur = parent[i];
                    }
                    1 => {
                        return Err(TreeError::Cycle {
                            news_id,
                            node: nodes[i].id,
                        })
                    }
                    _ => break,
                }
            }
            for i in chain.drain(..) {
                colour[i] = 2;
            }
        }
        let depth = Self::depths(&parent, base);

        if !root.is_virtual && roots != 1 {
            return Err(TreeError::RootCount { news_id, found: roots });
        }
        let mut children = vec![0usize; nodes.len()];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p] += 1;
                if nodes[i].t < nodes[p].t {
                    return Err(TreeError::TimeOrder {
                        news_id,
                        node: nodes[i].id,
                    });
                }
            }
        }
        Ok(Self {
            news_id,
            category,
            root,
            nodes,
            parent,
            depth,
            children,
        })
    }

    fn depths(parent: &[Option<usize>], base: usize) -> Vec<usize> {
        let mut depth: Vec<Option<usize>> = vec![None; parent.len()];
        let mut chain = Vec::new();
        for start in 0..parent.len() {
            let mut cur = start;
            while depth[cur].is_none() {
                chain.push(cur);
                match parent[cur] {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            let mut next = match depth[cur] {
                Some(d) => d + 1,
                None => base,
            };
            while let Some(i) = chain.pop() {
                depth[i] = Some(next);
                next += 1;
            }
        }
        depth.into_iter().map(|d| d.unwrap_or(base)).collect()
    }

    pub fn news_id(&self) -> u64 {
        self.news_id
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn root(&self) -> RootMarker {
        self.root
    }

    pub fn nodes(&self) -> &[TreeNode<T>] {
        &self.nodes
    }

    /// Depth of each node, aligned with [`SharingTree::nodes`].
    pub fn depths_slice(&self) -> &[usize] {
        &self.depth
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of sharers; a virtual page root is not counted.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Spread between the first and the last share.
    pub fn lifetime(&self) -> Result<T> {
        let mut it = self.nodes.iter().map(|n| n.t);
        let first = it.next().ok_or(Error::UndefinedMetric("lifetime of an empty tree"))?;
        let (lo, hi) = it.fold((first, first), |(lo, hi), t| (lo.min(t), hi.max(t)));
        Ok(hi - lo)
    }

    /// Homogeneity of every user-to-user tree edge, in node order.
    pub fn edge_homogeneities(&self) -> impl Iterator<Item = T> + '_ {
        self.nodes
            .iter()
            .zip(&self.parent)
            .filter_map(|(n, p)| p.map(|p| edge_homogeneity(self.nodes[p].sigma, n.sigma)))
    }

    pub fn mean_edge_homogeneity(&self) -> Result<T> {
        let (sum, count) = self
            .edge_homogeneities()
            .fold((T::zero(), 0usize), |(s, c), h| (s + h, c + 1));
        if count == 0 {
            return Err(Error::UndefinedMetric("mean edge homogeneity of a tree without edges"));
        }
        Ok(sum / T::of_usize(count))
    }

    /// Number of root-to-leaf paths, i.e. leaves.
    pub fn sharing_paths(&self) -> usize {
        self.children.iter().filter(|&&c| c == 0).count()
    }

    pub fn homogeneous_paths(&self) -> usize {
        self.path_profile()
            .iter()
            .filter(|p| p.class == PathClass::Homogeneous)
            .count()
    }

    /// One entry per leaf, in node order.
    ///
    /// Under a virtual root the first edge of each path joins the page
    /// (carrying its category sign) to the first sharer.
    pub fn path_profile(&self) -> Vec<PathProfile> {
        // (first edge homogeneous, all later edges homogeneous)
        let mut state: Vec<Option<(bool, bool)>> = vec![None; self.nodes.len()];
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| self.depth[i]);
        let page = T::of(self.root.page_sign as f64);
        for &i in &order {
            let sigma = self.nodes[i].sigma;
            state[i] = Some(match self.parent[i] {
                None if self.root.is_virtual => (is_homogeneous(page * sigma), true),
                None => (true, true),
                Some(p) => {
                    let e = is_homogeneous(edge_homogeneity(self.nodes[p].sigma, sigma));
                    match (self.parent[p], state[p].expect("parents precede children")) {
                        (None, _) if !self.root.is_virtual => (e, true),
                        (_, (first, tail)) => (first, tail && e),
                    }
                }
            });
        }
        (0..self.nodes.len())
            .filter(|&i| self.children[i] == 0)
            .map(|i| {
                let (first, tail) = state[i].expect("every node visited");
                let class = match (first, tail) {
                    (true, true) => PathClass::Homogeneous,
                    (false, true) => PathClass::FirstStepDiscordant,
                    _ => PathClass::Mixed,
                };
                PathProfile {
                    leaf: self.nodes[i].id,
                    length: self.depth[i],
                    class,
                }
            })
            .collect()
    }

    pub fn metrics(&self) -> TreeMetrics<T> {
        let profile = self.path_profile();
        TreeMetrics {
            news_id: self.news_id,
            category: self.category,
            size: self.size(),
            height: self.height(),
            lifetime: self.lifetime().ok(),
            mean_homogeneity: self.mean_edge_homogeneity().ok(),
            sharing_paths: profile.len(),
            homogeneous_paths: profile.iter().filter(|p| p.class == PathClass::Homogeneous).count(),
        }
    }
}

pub fn tree_size<T: Scalar>(t: &SharingTree<T>) -> usize {
    t.size()
}

pub fn tree_height<T: Scalar>(t: &SharingTree<T>) -> usize {
    t.height()
}

pub fn write_trees_json<T: Scalar, W: Write>(trees: &[SharingTree<T>], writer: W) -> Result<()> {
    serde_json::to_writer(writer, trees)?;
    Ok(())
}

pub fn read_trees_json<T: Scalar, R: Read>(reader: R) -> Result<Vec<SharingTree<T>>> {
    let value: serde_json::Value = serde_json::from_reader(reader)?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| {
            let doc: TreeDoc<T> = serde_json::from_value(v)?;
            Ok(SharingTree::try_from(doc)?)
        })
        .collect()
}

/// Per-tree metric table; undefined metrics are left blank.
pub fn write_metrics_csv<T: Scalar, W: Write>(trees: &[SharingTree<T>], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "news_id",
        "category",
        "size",
        "height",
        "lifetime",
        "mean_homogeneity",
        "paths",
        "homo_paths",
    ])?;
    let opt = |x: Option<T>| x.map(|v| v.to_string()).unwrap_or_default();
    for t in trees {
        let m = t.metrics();
        w.write_record([
            m.news_id.to_string(),
            m.category.to_string(),
            m.size.to_string(),
            m.height.to_string(),
            opt(m.lifetime),
            opt(m.mean_homogeneity),
            m.sharing_paths.to_string(),
            m.homogeneous_paths.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: u64, sigma: f64, t: f64, parent: Option<u64>) -> TreeNode<f64> {
        TreeNode {
            id,
            user: id + 100,
            sigma,
            t,
            parent,
        }
    }

    #[test]
    fn polarization_values() {
        let p = |c, s| UserProfile {
            user_id: 0,
            likes_conspiracy: c,
            likes_science: s,
        };
        assert_eq!(user_polarization::<f64>(&p(4, 0)).unwrap(), 1.0);
        assert_eq!(user_polarization::<f64>(&p(2, 2)).unwrap(), 0.0);
        assert_eq!(user_polarization::<f64>(&p(3, 1)).unwrap(), 0.5);
        assert!(matches!(
            user_polarization::<f64>(&p(0, 0)),
            Err(Error::UndefinedPolarization)
        ));
        assert_eq!(polarization_from_fraction(0.75f64), 0.5);
    }

    #[test]
    fn homogeneity_sign_rule() {
        assert_eq!(edge_homogeneity(1.0, 1.0), 1.0);
        assert!(is_homogeneous(1.0));
        assert_eq!(edge_homogeneity(0.5, -0.5), -0.25);
        assert!(!is_homogeneous(-0.25));
        assert_eq!(edge_homogeneity(0.0, 0.9), 0.0);
        assert!(!is_homogeneous(0.0));
    }

    #[test]
    fn chain_under_page() {
        let nodes = vec![
            node(1, 1.0, 0.0, None),
            node(2, 1.0, 1.0, Some(1)),
            node(3, 1.0, 2.0, Some(2)),
        ];
        let t = SharingTree::new(7, Category::Synthetic, RootMarker::page(1), nodes).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.height(), 3);
        assert_eq!(t.lifetime().unwrap(), 2.0);
        assert_eq!(t.mean_edge_homogeneity().unwrap(), 1.0);
        assert_eq!(t.sharing_paths(), 1);
    }

    #[test]
    fn empty_tree() {
        let t = SharingTree::<f64>::new(1, Category::Troll, RootMarker::page(1), vec![]).unwrap();
        assert_eq!(t.size(), 0);
        assert_eq!(t.height(), 0);
        assert!(matches!(t.lifetime(), Err(Error::UndefinedMetric(_))));
        assert!(t.mean_edge_homogeneity().is_err());
        assert_eq!(t.sharing_paths(), 0);
        assert_eq!(t.homogeneous_paths(), 0);
        let m = t.metrics();
        assert_eq!(m.lifetime, None);
        assert_eq!(m.mean_homogeneity, None);
    }

    #[test]
    fn lifetime_from_hours() {
        let nodes = vec![
            node(0, 0.2, 3.0, None),
            node(1, 0.2, 4.5, Some(0)),
            node(2, 0.2, 23.0, Some(0)),
        ];
        let t = SharingTree::new(0, Category::Science, RootMarker::user(), nodes).unwrap();
        assert_eq!(t.lifetime().unwrap(), 20.0);
        assert_eq!(t.height(), 1);
        let single = SharingTree::new(0, Category::Science, RootMarker::user(), vec![node(0, 0.0, 5.0, None)]).unwrap();
        assert_eq!(single.lifetime().unwrap(), 0.0);
        assert_eq!(single.size(), 1);
    }

    #[test]
    fn opposite_edges_average_to_zero() {
        let nodes = vec![
            node(0, 1.0, 0.0, None),
            node(1, 1.0, 1.0, Some(0)),
            node(2, -1.0, 1.0, Some(0)),
        ];
        let t = SharingTree::new(0, Category::Conspiracy, RootMarker::user(), nodes).unwrap();
        assert_eq!(t.mean_edge_homogeneity().unwrap(), 0.0);
        assert_eq!(t.sharing_paths(), 2);
        assert_eq!(t.homogeneous_paths(), 1);
    }

    #[test]
    fn star_paths() {
        let mut nodes = vec![node(0, 1.0, 0.0, None)];
        nodes.extend((1..=5).map(|i| node(i, 1.0, 1.0, Some(0))));
        let t = SharingTree::new(0, Category::Conspiracy, RootMarker::user(), nodes).unwrap();
        assert_eq!(t.sharing_paths(), 5);
        assert_eq!(t.homogeneous_paths(), 5);
    }

    #[test]
    fn discordant_first_step() {
        let nodes = vec![
            node(1, -1.0, 0.0, None),
            node(2, -1.0, 1.0, Some(1)),
            node(3, -1.0, 2.0, Some(2)),
        ];
        let t = SharingTree::new(0, Category::Conspiracy, RootMarker::page(1), nodes).unwrap();
        let profile = t.path_profile();
        assert_eq!(profile.len(), 1);
        assert_eq!(profile[0].class, PathClass::FirstStepDiscordant);
        assert_eq!(profile[0].length, 3);
        assert_eq!(t.homogeneous_paths(), 0);
        assert_eq!(t.sharing_paths(), 1);
    }

    #[test]
    fn validation_errors() {
        let cyc = vec![
            node(0, 0.0, 0.0, None),
            node(1, 0.0, 0.0, Some(2)),
            node(2, 0.0, 0.0, Some(1)),
        ];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::user(), cyc),
            Err(TreeError::Cycle { news_id: 4, .. })
        ));
        let selfloop = vec![node(0, 0.0, 0.0, Some(0))];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::page(1), selfloop),
            Err(TreeError::Cycle { node: 0, .. })
        ));
        let orphan = vec![node(0, 0.0, 0.0, None), node(1, 0.0, 0.0, Some(9))];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::user(), orphan),
            Err(TreeError::OrphanParent { node: 1, parent: 9, .. })
        ));
        let sigma = vec![node(0, 1.5, 0.0, None)];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::user(), sigma),
            Err(TreeError::SigmaOutOfRange { node: 0, .. })
        ));
        let two_roots = vec![node(0, 0.0, 0.0, None), node(1, 0.0, 0.0, None)];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::user(), two_roots.clone()),
            Err(TreeError::RootCount { found: 2, .. })
        ));
        assert!(SharingTree::new(4, Category::Troll, RootMarker::page(-1), two_roots).is_ok());
        let time = vec![node(0, 0.0, 5.0, None), node(1, 0.0, 4.0, Some(0))];
        assert!(matches!(
            SharingTree::new(4, Category::Troll, RootMarker::user(), time),
            Err(TreeError::TimeOrder { node: 1, .. })
        ));
        assert!(matches!(
            SharingTree::<f64>::new(4, Category::Troll, RootMarker::page(0), vec![]),
            Err(TreeError::PageSign { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let t = SharingTree::new(
            3,
            Category::Science,
            RootMarker::page(-1),
            vec![node(0, -0.5, 0.25, None), node(1, -1.0, 1.0, Some(0))],
        )
        .unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["news_id"], 3);
        assert_eq!(v["category"], "science");
        assert_eq!(v["root"]["virtual"], true);
        assert_eq!(v["root"]["page_sign"], -1);
        assert_eq!(v["nodes"][1]["parent"], 0);
        assert!(v["nodes"][0]["parent"].is_null());
        assert_eq!(v["nodes"][0]["sigma"], -0.5);
        let back: SharingTree<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn metrics_csv_blanks_undefined() {
        let t = SharingTree::<f64>::new(1, Category::Troll, RootMarker::page(1), vec![]).unwrap();
        let mut out = Vec::new();
        write_metrics_csv(&[t], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "news_id,category,size,height,lifetime,mean_homogeneity,paths,homo_paths\n1,troll,0,0,,,0,0\n"
        );
    }
}
