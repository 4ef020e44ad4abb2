//! Backtracking search for a good colouring.
//!
//! Edges of one component are indexed `0..m` (m ≤ 64) so a partial
//! colouring is two bitmasks. Constraints:
//!
//! - red degree of every vertex at most `k - 1`; a vertex at `k - 1` forces
//!   its undecided edges blue;
//! - every `K_n` of the host keeps a red edge; a clique with all but one
//!   edge blue forces that edge red.
//!
//! A counting bound closes a node early: edge-disjoint cliques that still
//! need a red edge each consume a distinct red edge, and the remaining red
//! capacity is at most half the summed per-vertex slack.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{check_params, verify_colouring, ArrowDecision, SearchStats, TwoColouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par::{self, Exec};

/// Default limit on the edges of one component.
pub const DEFAULT_EDGE_BUDGET: usize = 32;
/// Hard limit imposed by the bitmask representation.
const EDGE_MASK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest component (in edges) the engine will search.
    pub max_edges: usize,
    /// Abort after this many search nodes.
    pub max_nodes: Option<u64>,
    pub exec: Exec,
    /// Branching depth at which the tree is split into parallel subtrees.
    pub split_depth: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_edges: DEFAULT_EDGE_BUDGET, max_nodes: None, exec: Exec::default(), split_depth: 10 }
    }
}

impl EngineConfig {
    pub fn sequential() -> Self {
        EngineConfig { exec: Exec::Sequential, ..Default::default() }
    }
}

/// `arrows_with` under the default configuration.
pub fn arrows(f: &Graph, k: usize, n: usize) -> Result<ArrowDecision> {
    arrows_with(f, k, n, &EngineConfig::default())
}

/// Decide `f → (K_{1,k}, K_n)`.
///
/// Components are searched in order of their smallest vertex; the first one
/// that admits no good colouring settles the verdict. Otherwise the
/// per-component colourings are merged into a certificate, which is checked
/// before it is returned.
pub fn arrows_with(f: &Graph, k: usize, n: usize, config: &EngineConfig) -> Result<ArrowDecision> {
    check_params(k, n)?;
    let limit = config.max_edges.min(EDGE_MASK_LIMIT);
    let mut stats = SearchStats::default();
    let mut red_edges: Vec<(usize, usize)> = Vec::new();
    let comps: Vec<VertexSet> = f.components().into_iter().filter(|c| c.len() > 1).collect();
    for &comp in &comps {
        let sub = f.induced(comp)?;
        let m = sub.edge_count();
        if m > limit {
            return Err(Error::BudgetExceeded(format!(
                "component with {m} edges exceeds the engine limit of {limit}"
            )));
        }
        stats.components += 1;
        let problem = Problem::new(&sub, k, n);
        let (found, sub_stats) = problem.solve(config)?;
        stats.absorb(sub_stats);
        match found {
            None => {
                return Ok(ArrowDecision { arrows: true, certificate: None, component: Some(comp), stats });
            }
            Some(mask) => {
                let members = comp.to_vec();
                for (i, &(u, v)) in problem.ends.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        red_edges.push((members[u], members[v]));
                    }
                }
            }
        }
    }
    let certificate = TwoColouring::with_red_edges(f.clone(), &red_edges)?;
    let check = verify_colouring(&certificate, k, n)?;
    if !check.is_good() {
        return Err(Error::Construction(format!("engine produced a bad certificate: {check:?}")));
    }
    Ok(ArrowDecision { arrows: false, certificate: Some(certificate), component: None, stats })
}

#[derive(Clone, Copy, Debug)]
struct State {
    red: u64,
    blue: u64,
}

struct Problem {
    all: u64,
    max_red: u32,
    /// Edge mask incident to each vertex.
    inc: Vec<u64>,
    ends: Vec<(usize, usize)>,
    /// Edge masks of the host's n-cliques.
    cliques: Vec<u64>,
    edge_cliques: Vec<Vec<u32>>,
}

enum Outcome {
    Found(u64),
    Exhausted,
}

struct Budget<'a> {
    nodes: &'a AtomicU64,
    limit: Option<u64>,
    exceeded: &'a AtomicBool,
}

impl Budget<'_> {
    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| used > l) {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

impl Problem {
    fn new(g: &Graph, k: usize, n: usize) -> Self {
        let ends = g.edges();
        let mut index = vec![[usize::MAX; 64]; g.order()];
        let mut inc = vec![0u64; g.order()];
        for (i, &(u, v)) in ends.iter().enumerate() {
            index[u][v] = i;
            index[v][u] = i;
            inc[u] |= 1 << i;
            inc[v] |= 1 << i;
        }
        let cliques: Vec<u64> = g
            .cliques(n)
            .into_iter()
            .map(|c| {
                let vs = c.to_vec();
                let mut mask = 0u64;
                for (a, &u) in vs.iter().enumerate() {
                    for &v in &vs[a + 1..] {
                        mask |= 1 << index[u][v];
                    }
                }
                mask
            })
            .collect();
        let mut edge_cliques = vec![Vec::new(); ends.len()];
        for (q, &mask) in cliques.iter().enumerate() {
            for (e, list) in edge_cliques.iter_mut().enumerate() {
                if mask >> e & 1 == 1 {
                    list.push(q as u32);
                }
            }
        }
        let all = if ends.len() == 64 { u64::MAX } else { (1u64 << ends.len()) - 1 };
        Problem { all, max_red: (k - 1) as u32, inc, ends, cliques, edge_cliques }
    }

    fn solve(&self, config: &EngineConfig) -> Result<(Option<u64>, SearchStats)> {
        let nodes = AtomicU64::new(0);
        let conflicts = AtomicU64::new(0);
        let exceeded = AtomicBool::new(false);
        let budget = Budget { nodes: &nodes, limit: config.max_nodes, exceeded: &exceeded };

        let mut root = State { red: 0, blue: 0 };
        let mut queue = Vec::new();
        let ok = self.seed(&mut root, &mut queue) && self.propagate(&mut root, &mut queue);
        let outcome = if !ok {
            conflicts.fetch_add(1, Ordering::Relaxed);
            Outcome::Exhausted
        } else {
            let mut frontier = Vec::new();
            self.expand(root, config.split_depth, &mut frontier, &conflicts, &budget);
            let found = par::find_map_first(config.exec, &frontier, |&st| {
                let mut local = 0u64;
                let r = self.dfs(st, &mut local, &budget);
                conflicts.fetch_add(local, Ordering::Relaxed);
                r
            });
            match found {
                Some(mask) => Outcome::Found(mask),
                None => Outcome::Exhausted,
            }
        };
        if exceeded.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded(format!(
                "search exceeded {} nodes",
                config.max_nodes.unwrap_or(u64::MAX)
            )));
        }
        let stats = SearchStats {
            nodes: nodes.load(Ordering::Relaxed),
            conflicts: conflicts.load(Ordering::Relaxed),
            components: 1,
        };
        Ok(match outcome {
            Outcome::Found(mask) => (Some(mask), stats),
            Outcome::Exhausted => (None, stats),
        })
    }

    /// Collect the nodes at `depth` (and any earlier complete colourings) in
    /// depth-first order, so the parallel scan returns what a sequential
    /// one would.
    fn expand(&self, st: State, depth: u32, out: &mut Vec<State>, conflicts: &AtomicU64, budget: &Budget) {
        let und = self.all & !(st.red | st.blue);
        if depth == 0 || und == 0 {
            out.push(st);
            return;
        }
        if !budget.tick() {
            return;
        }
        if self.capacity_exceeded(&st) {
            conflicts.fetch_add(1, Ordering::Relaxed);
            return;
        }
        let e = self.choose(&st, und);
        for red in [true, false] {
            let mut child = st;
            let mut queue = Vec::new();
            if self.assign(&mut child, e, red, &mut queue) && self.propagate(&mut child, &mut queue) {
                self.expand(child, depth - 1, out, conflicts, budget);
            } else {
                conflicts.fetch_add(1, Ordering::Relaxed);
            }
        }
    }

    fn dfs(&self, st: State, conflicts: &mut u64, budget: &Budget) -> Option<u64> {
        if !budget.tick() {
            return None;
        }
        let und = self.all & !(st.red | st.blue);
        if und == 0 {
            // every clique was checked when its last edge went blue
            debug_assert!(self.cliques.iter().all(|&q| q & st.red != 0));
            return Some(st.red);
        }
        if self.capacity_exceeded(&st) {
            *conflicts += 1;
            return None;
        }
        let e = self.choose(&st, und);
        let mut queue = Vec::new();
        for red in [true, false] {
            let mut child = st;
            queue.clear();
            if self.assign(&mut child, e, red, &mut queue) && self.propagate(&mut child, &mut queue) {
                if let Some(found) = self.dfs(child, conflicts, budget) {
                    return Some(found);
                }
            } else {
                *conflicts += 1;
            }
        }
        None
    }

    /// An undecided edge at the vertex with most undecided edges, lowest
    /// vertex and then lowest edge index on ties.
    fn choose(&self, _st: &State, und: u64) -> usize {
        let mut best = (0u32, usize::MAX);
        for (v, &inc) in self.inc.iter().enumerate() {
            let d = (inc & und).count_ones();
            if d > best.0 {
                best = (d, v);
            }
        }
        (self.inc[best.1] & und).trailing_zeros() as usize
    }

    fn seed(&self, st: &mut State, queue: &mut Vec<(usize, bool)>) -> bool {
        for v in 0..self.inc.len() {
            if !self.saturate(st, v, queue) {
                return false;
            }
        }
        for &q in &self.cliques {
            if q.count_ones() == 1 && !self.assign(st, q.trailing_zeros() as usize, true, queue) {
                return false;
            }
        }
        true
    }

    fn assign(&self, st: &mut State, e: usize, red: bool, queue: &mut Vec<(usize, bool)>) -> bool {
        let bit = 1u64 << e;
        if st.red & bit != 0 {
            return red;
        }
        if st.blue & bit != 0 {
            return !red;
        }
        if red {
            st.red |= bit;
        } else {
            st.blue |= bit;
        }
        queue.push((e, red));
        true
    }

    /// Force blue on `v`'s undecided edges once it has `k - 1` red edges.
    fn saturate(&self, st: &mut State, v: usize, queue: &mut Vec<(usize, bool)>) -> bool {
        let reds = (st.red & self.inc[v]).count_ones();
        if reds > self.max_red {
            return false;
        }
        if reds == self.max_red {
            let mut und = self.inc[v] & !(st.red | st.blue);
            while und != 0 {
                let e = und.trailing_zeros() as usize;
                und &= und - 1;
                self.assign(st, e, false, queue);
            }
        }
        true
    }

    fn propagate(&self, st: &mut State, queue: &mut Vec<(usize, bool)>) -> bool {
        while let Some((e, red)) = queue.pop() {
            if red {
                let (u, v) = self.ends[e];
                if !self.saturate(st, u, queue) || !self.saturate(st, v, queue) {
                    return false;
                }
            } else {
                for &q in &self.edge_cliques[e] {
                    let mask = self.cliques[q as usize];
                    if mask & st.red != 0 {
                        continue;
                    }
                    let open = mask & !st.blue;
                    if open == 0 {
                        return false;
                    }
                    if open.count_ones() == 1 && !self.assign(st, open.trailing_zeros() as usize, true, queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn capacity_exceeded(&self, st: &State) -> bool {
        let und = self.all & !(st.red | st.blue);
        let mut used = 0u64;
        let mut needed = 0u32;
        for &q in &self.cliques {
            if q & st.red == 0 && q & used == 0 {
                used |= q & und;
                needed += 1;
            }
        }
        if needed == 0 {
            return false;
        }
        let slack: u32 = self
            .inc
            .iter()
            .map(|&inc| (self.max_red - (inc & st.red).count_ones()).min((inc & und).count_ones()))
            .sum();
        needed > slack / 2
    }
}
