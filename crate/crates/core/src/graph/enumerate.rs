//! Isomorphism-class enumeration, growing one edge at a time.
//!
//! Free mode covers graphs without isolated vertices of any order. Every
//! such graph with `e + 1` edges arises from one with `e` edges by adding an
//! edge between old vertices, a pendant edge to a new vertex, or a disjoint
//! edge on two new vertices. Connected graphs only need the first two moves:
//! deleting a pendant edge of a spanning-tree leaf, or a non-tree edge at
//! it, keeps a connected graph connected.
//!
//! Fixed-order mode grows from the edgeless graph on `order` vertices.

use std::collections::BTreeMap;

use super::{canonical_form, Graph, MAX_ORDER};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Default ceiling on `max_edges` in free mode.
pub const DEFAULT_EDGE_CEILING: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_edges: usize,
    pub connected_only: bool,
    /// Drop graphs with isolated vertices. Must be true in free mode.
    pub no_isolated: bool,
    /// Enumerate graphs on exactly this many vertices instead.
    pub order: Option<usize>,
    pub ceiling: usize,
    pub exec: Exec,
}

impl EnumOptions {
    pub fn new(max_edges: usize) -> Self {
        EnumOptions {
            max_edges,
            connected_only: false,
            no_isolated: true,
            order: None,
            ceiling: DEFAULT_EDGE_CEILING,
            exec: Exec::default(),
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn with_isolated(mut self) -> Self {
        self.no_isolated = false;
        self
    }

    pub fn on_order(mut self, order: usize) -> Self {
        self.order = Some(order);
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    fn validate(&self) -> Result<()> {
        match self.order {
            None => {
                if !self.no_isolated {
                    return Err(Error::Precondition(
                        "isolated vertices need a fixed order (set `order`)".into(),
                    ));
                }
                if self.max_edges > self.ceiling {
                    return Err(Error::Ceiling {
                        what: "max_edges",
                        ceiling: self.ceiling,
                        got: self.max_edges,
                    });
                }
            }
            Some(n) => {
                if n == 0 || n > MAX_ORDER {
                    return Err(Error::InvalidOrder(n));
                }
            }
        }
        Ok(())
    }

    pub fn levels(&self) -> Result<Levels> {
        self.validate()?;
        Ok(Levels { opts: self.clone(), frontier: None, edges: 0 })
    }
}

/// One isomorphism class per graph with at most `max_edges` edges, ascending
/// by edge count.
pub fn enumerate_graphs(max_edges: usize, connected_only: bool, no_isolated: bool) -> Result<Vec<Graph>> {
    let mut opts = EnumOptions::new(max_edges);
    opts.connected_only = connected_only;
    opts.no_isolated = no_isolated;
    Ok(opts.levels()?.flat_map(|(_, level)| level).collect())
}

/// Streams `(edge_count, classes)` for `edge_count = 0..=max_edges`.
///
/// Classes inside a level are sorted by canonical form.
pub struct Levels {
    opts: EnumOptions,
    /// Unfiltered classes with `edges` edges, `None` before the first level.
    frontier: Option<Vec<Graph>>,
    edges: usize,
}

impl Levels {
    fn first_level(&self) -> Vec<Graph> {
        match self.opts.order {
            Some(n) => vec![Graph::empty(n).expect("validated order")],
            None => Vec::new(),
        }
    }

    fn grow(&self, parents: &[Graph]) -> Vec<Graph> {
        let free = self.opts.order.is_none();
        let connected = self.opts.connected_only;
        if free && self.edges == 0 {
            return vec![Graph::complete(2).expect("K_2")];
        }
        let children: Vec<Vec<(String, Graph)>> = par::map(self.opts.exec, parents, |g| {
            let mut out = Vec::new();
            let n = g.order();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v).expect("valid vertices");
                        out.push((canonical_form(&h), h));
                    }
                }
            }
            if free && n < MAX_ORDER {
                for u in 0..n {
                    let mut h = g.clone();
                    let x = h.add_vertex().expect("below max order");
                    h.add_edge(u, x).expect("valid vertices");
                    out.push((canonical_form(&h), h));
                }
            }
            if free && !connected && n + 2 <= MAX_ORDER {
                let h = g.disjoint_union(&Graph::complete(2).expect("K_2")).expect("below max order");
                out.push((canonical_form(&h), h));
            }
            out
        });
        let mut unique: BTreeMap<String, Graph> = BTreeMap::new();
        for (cert, h) in children.into_iter().flatten() {
            unique.entry(cert).or_insert(h);
        }
        unique.into_values().collect()
    }

    fn keep(&self, g: &Graph) -> bool {
        (!self.opts.connected_only || g.is_connected())
            && (!self.opts.no_isolated || g.isolated_vertices().is_empty())
    }
}

impl Iterator for Levels {
    type Item = (usize, Vec<Graph>);

    fn next(&mut self) -> Option<Self::Item> {
        let cap = match self.opts.order {
            Some(n) => self.opts.max_edges.min(n * (n - 1) / 2),
            None => self.opts.max_edges,
        };
        let level = match self.frontier.take() {
            None => self.first_level(),
            Some(prev) => {
                if self.edges >= cap {
                    return None;
                }
                let next = self.grow(&prev);
                self.edges += 1;
                next
            }
        };
        let kept = level.iter().filter(|g| self.keep(g)).cloned().collect();
        let edges = self.edges;
        self.frontier = Some(level);
        Some((edges, kept))
    }
}
