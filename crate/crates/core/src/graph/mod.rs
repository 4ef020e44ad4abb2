//! Dense simple graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64`, so neighbourhood intersections,
//! induced subgraphs and clique tests are word operations.

mod canon;
mod enumerate;
mod io;

pub use canon::{canonical_form, canonical_form_exhaustive, canonical_labeling};
pub use enumerate::{enumerate_graphs, EnumOptions, Levels};
pub use io::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

/// A set of vertices of some host graph, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// All of `0..order`.
    pub fn full(order: usize) -> Self {
        VertexSet(low_mask(order))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    /// The `count` smallest members, or `None` if there are fewer.
    pub fn take_lowest(self, count: usize) -> Option<VertexSet> {
        if self.len() < count {
            return None;
        }
        Some(self.iter().take(count).collect())
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub(crate) fn low_mask(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

/// Undirected simple graph with vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph.
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Graph { adj: vec![0; order] })
    }

    pub fn complete(order: usize) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        let all = low_mask(order);
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        Ok(g)
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path 0-1-...-(order-1).
    pub fn path(order: usize) -> Result<Self> {
        let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        Graph::from_edges(order, &edges)
    }

    pub fn cycle(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::Domain(format!("cycle needs at least 3 vertices, got {order}")));
        }
        let mut g = Graph::path(order)?;
        g.add_edge(0, order - 1)?;
        Ok(g)
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// `pairs` disjoint edges `{2i, 2i+1}`.
    pub fn matching(pairs: usize) -> Result<Self> {
        let edges: Vec<_> = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::from_edges(2 * pairs, &edges)
    }

    /// Build directly from adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        let mask = low_mask(order);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, order });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            for w in BitIter(row) {
                if rows[w] >> v & 1 == 0 {
                    return Err(Error::Parse(format!("asymmetric adjacency between {v} and {w}")));
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    /// Append an isolated vertex, returning its index.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.order() == MAX_ORDER {
            return Err(Error::InvalidOrder(MAX_ORDER + 1));
        }
        self.adj.push(0);
        Ok(self.order() - 1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < 64 && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: VertexSet) -> usize {
        (self.adj[v] & set.0).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, &row) in self.adj.iter().enumerate() {
            for v in BitIter(row >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Maximum degree of the subgraph induced by `set` (0 for an empty set).
    pub fn max_degree_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| self.degree_into(v, set)).max().unwrap_or(0)
    }

    /// Minimum degree of the subgraph induced by a nonempty `set`.
    pub fn min_degree_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| self.degree_into(v, set)).min().unwrap_or(0)
    }

    /// Edges with both ends in `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| self.degree_into(v, set)).sum::<usize>() / 2
    }

    /// `e(A, B)` for disjoint `a`, `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| self.degree_into(v, b)).sum()
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let all = low_mask(self.order());
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &row)| !row & all & !(1 << v))
            .collect();
        Graph { adj }
    }

    /// `G[X]`, with the members of `x` relabelled `0..|x|` in ascending order.
    pub fn induced(&self, x: VertexSet) -> Result<Graph> {
        if x.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if !x.is_subset(self.vertices()) {
            let bad = x.difference(self.vertices()).first().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex: bad, order: self.order() });
        }
        let members = x.to_vec();
        let adj = members
            .iter()
            .map(|&v| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.has_edge(v, w))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(Graph { adj })
    }

    /// `G ∖ X`. Errors if nothing would remain.
    pub fn remove_vertices(&self, x: VertexSet) -> Result<Graph> {
        self.induced(self.vertices().difference(x))
    }

    /// Relabel by `perm`, where vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.order() {
            return Err(Error::Precondition("permutation length differs from order".into()));
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p >= self.order() || seen.contains(p) {
                return Err(Error::Precondition("not a permutation".into()));
            }
            seen.insert(p);
        }
        let mut adj = vec![0u64; self.order()];
        for (v, &row) in self.adj.iter().enumerate() {
            adj[perm[v]] = BitIter(row).fold(0, |acc, w| acc | 1 << perm[w]);
        }
        Ok(Graph { adj })
    }

    /// Disjoint union, `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.order();
        if shift + other.order() > MAX_ORDER {
            return Err(Error::InvalidOrder(shift + other.order()));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Graph { adj })
    }

    /// True if every vertex has degree at most one.
    pub fn is_matching(&self) -> bool {
        self.max_degree() <= 1
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::EMPTY.with(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                frontier = VertexSet(next).difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.order()).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Some `size` pairwise-adjacent vertices, if any exist.
    pub fn find_clique(&self, size: usize) -> Option<VertexSet> {
        if size == 0 {
            return Some(VertexSet::EMPTY);
        }
        find_clique_in(&self.adj, self.vertices().0, size, 0)
    }

    /// Boolean form of [`Graph::find_clique`].
    pub fn contains_clique(&self, size: usize) -> bool {
        self.find_clique(size).is_some()
    }

    /// All cliques of exactly `size` vertices.
    pub fn cliques(&self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        collect_cliques(&self.adj, self.vertices().0, size, 0, &mut out);
        out
    }

    /// True if `set` is pairwise adjacent.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.neighbours(v)))
    }
}

/// Clique search directly on adjacency rows, restricted to `cand`.
pub(crate) fn clique_in_rows(rows: &[u64], cand: u64, size: usize) -> Option<VertexSet> {
    find_clique_in(rows, cand, size, 0)
}

fn find_clique_in(adj: &[u64], cand: u64, need: usize, chosen: u64) -> Option<VertexSet> {
    if need == 0 {
        return Some(VertexSet(chosen));
    }
    let mut cand = cand;
    while cand.count_ones() as usize >= need {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if let Some(found) = find_clique_in(adj, cand & adj[v], need - 1, chosen | 1 << v) {
            return Some(found);
        }
    }
    None
}

fn collect_cliques(adj: &[u64], cand: u64, need: usize, chosen: u64, out: &mut Vec<VertexSet>) {
    if need == 0 {
        out.push(VertexSet(chosen));
        return;
    }
    let mut cand = cand;
    while cand.count_ones() as usize >= need {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        collect_cliques(adj, cand & adj[v], need - 1, chosen | 1 << v, out);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_graph6(&s).map_err(serde::de::Error::custom)
    }
}
