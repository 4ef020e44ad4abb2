//! Deciding `F → (K_{1,k}, K_n)`.
//!
//! A colouring is *good* when no vertex has `k` red edges and the blue
//! edges contain no `K_n`; `F` arrows exactly when no good colouring exists.
//! Both target graphs are connected, so a good colouring of `F` is the same
//! thing as a good colouring of each component, and `F` arrows iff one of
//! its components does.

mod engine;
mod oracle;

pub use engine::{arrows, arrows_with, EngineConfig, DEFAULT_EDGE_BUDGET};
pub use oracle::{brute_force_arrows, brute_force_arrows_with, ORACLE_EDGE_LIMIT};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{clique_in_rows, Graph, VertexSet};

/// Red/blue assignment of every edge of a host graph.
///
/// Colours are stored against `host.edges()`, i.e. edges sorted by `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColouring {
    host: Graph,
    red: Vec<bool>,
}

impl TwoColouring {
    pub fn all_blue(host: Graph) -> Self {
        let m = host.edge_count();
        TwoColouring { host, red: vec![false; m] }
    }

    /// Colour the listed edges red and everything else blue.
    pub fn with_red_edges(host: Graph, red_edges: &[(usize, usize)]) -> Result<Self> {
        let edges = host.edges();
        let mut red = vec![false; edges.len()];
        for &(u, v) in red_edges {
            let key = (u.min(v), u.max(v));
            let i = edges
                .binary_search(&key)
                .map_err(|_| Error::Precondition(format!("({u}, {v}) is not an edge of the host")))?;
            red[i] = true;
        }
        Ok(TwoColouring { host, red })
    }

    /// `red[i]` colours the `i`-th edge of `host.edges()`.
    pub fn from_flags(host: Graph, red: Vec<bool>) -> Result<Self> {
        if red.len() != host.edge_count() {
            return Err(Error::Precondition(format!(
                "{} colour flags for {} edges",
                red.len(),
                host.edge_count()
            )));
        }
        Ok(TwoColouring { host, red })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn flags(&self) -> &[bool] {
        &self.red
    }

    pub fn red_indices(&self) -> Vec<usize> {
        (0..self.red.len()).filter(|&i| self.red[i]).collect()
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.host.edges().into_iter().zip(&self.red).filter(|(_, &r)| r).map(|(e, _)| e).collect()
    }

    pub fn is_red(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.host.edges().binary_search(&key).map(|i| self.red[i]).unwrap_or(false)
    }

    pub fn red_graph(&self) -> Graph {
        self.subgraph(true)
    }

    pub fn blue_graph(&self) -> Graph {
        self.subgraph(false)
    }

    fn subgraph(&self, red: bool) -> Graph {
        let mut g = Graph::empty(self.host.order()).expect("host order is valid");
        for ((u, v), &r) in self.host.edges().into_iter().zip(&self.red) {
            if r == red {
                g.add_edge(u, v).expect("host edge");
            }
        }
        g
    }
}

/// JSON shape: `{"order": n, "edges": [[u, v], ...], "red": [i, ...]}`, edges
/// in `(u, v)` order and `red` indexing into `edges`.
#[derive(Serialize, Deserialize)]
struct CertificateJson {
    order: usize,
    edges: Vec<[usize; 2]>,
    red: Vec<usize>,
}

impl Serialize for TwoColouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            order: self.host.order(),
            edges: self.host.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            red: self.red_indices(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoColouring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CertificateJson::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        let host = Graph::from_edges(raw.order, &pairs).map_err(D::Error::custom)?;
        if host.edges() != pairs {
            return Err(D::Error::custom("edges must be distinct and sorted with u < v"));
        }
        let mut red = vec![false; pairs.len()];
        for i in raw.red {
            *red.get_mut(i).ok_or_else(|| D::Error::custom(format!("red index {i} out of range")))? = true;
        }
        Ok(TwoColouring { host, red })
    }
}

/// Outcome of checking one colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ColouringCheck {
    Good,
    /// `centre` has at least `k` red edges; `leaves` are `k` of them.
    RedStar { centre: usize, leaves: VertexSet },
    BlueClique { vertices: VertexSet },
}

impl ColouringCheck {
    pub fn is_good(&self) -> bool {
        matches!(self, ColouringCheck::Good)
    }
}

pub(crate) fn check_params(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < 2 {
        return Err(Error::Domain(format!("need k >= 2 and n >= 2, got k={k}, n={n}")));
    }
    Ok(())
}

/// Good, or a concrete red `K_{1,k}` / blue `K_n`.
pub fn verify_colouring(c: &TwoColouring, k: usize, n: usize) -> Result<ColouringCheck> {
    check_params(k, n)?;
    Ok(check_rows(c.red_graph().rows(), c.blue_graph().rows(), k, n))
}

pub(crate) fn check_rows(red: &[u64], blue: &[u64], k: usize, n: usize) -> ColouringCheck {
    for (v, &row) in red.iter().enumerate() {
        if row.count_ones() as usize >= k {
            let leaves = VertexSet::from_bits(row).take_lowest(k).expect("degree at least k");
            return ColouringCheck::RedStar { centre: v, leaves };
        }
    }
    let all = VertexSet::full(blue.len()).bits();
    match clique_in_rows(blue, all, n) {
        Some(vertices) => ColouringCheck::BlueClique { vertices },
        None => ColouringCheck::Good,
    }
}

/// Counters from the exact search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Branches closed by a propagation conflict or the capacity bound.
    pub conflicts: u64,
    /// Components that carried at least one edge.
    pub components: usize,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.conflicts += other.conflicts;
    }
}

/// Verdict for `F → (K_{1,k}, K_n)`.
///
/// When `arrows` is false, `certificate` holds a good colouring. When it is
/// true, `stats` describe the exhausted search and `component` names the
/// component that could not be coloured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDecision {
    pub arrows: bool,
    pub certificate: Option<TwoColouring>,
    pub component: Option<VertexSet>,
    pub stats: SearchStats,
}

/// Checks that `embedding` maps `small` into `big` and that the verdicts
/// respect monotonicity: if `small` arrows then so does `big`.
pub fn is_subgraph_monotone_witness(
    small: &Graph,
    big: &Graph,
    embedding: &[usize],
    k: usize,
    n: usize,
    config: &EngineConfig,
) -> Result<bool> {
    if embedding.len() != small.order() {
        return Err(Error::Precondition("embedding length differs from order".into()));
    }
    let image: VertexSet = embedding.iter().copied().collect();
    if image.len() != embedding.len() || embedding.iter().any(|&x| x >= big.order()) {
        return Err(Error::Precondition("embedding is not injective into the host".into()));
    }
    if let Some((u, v)) = small.edges().into_iter().find(|&(u, v)| !big.has_edge(embedding[u], embedding[v])) {
        return Err(Error::Precondition(format!("edge ({u}, {v}) is not preserved")));
    }
    let small_arrows = arrows_with(small, k, n, config)?.arrows;
    let big_arrows = arrows_with(big, k, n, config)?.arrows;
    Ok(!small_arrows || big_arrows)
}
