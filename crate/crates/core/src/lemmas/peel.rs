//! Peeling: a set `T` whose removal leaves maximum degree below `k`, where
//! every vertex of `T` keeps at least `k` neighbours outside `T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::f_value;
use crate::graph::{Graph, VertexSet};

/// Orders up to this size get a minimum `T` by exhaustive search.
pub const EXHAUSTIVE_PEEL_ORDER: usize = 20;

/// One peel of the vertex set `t ∪ b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peel {
    pub t: VertexSet,
    /// The rest: induces maximum degree below `k`.
    pub b: VertexSet,
    /// True when `|t|` is certified minimum.
    pub minimal: bool,
}

impl Peel {
    pub fn verify(&self, g: &Graph, k: usize) -> bool {
        self.t.is_disjoint(self.b) && satisfies(g, self.t, self.b, k)
    }
}

/// A layer of the cascade: `t` is peeled from the previous layer's `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelLayer {
    pub step: usize,
    pub t: VertexSet,
    pub b: VertexSet,
    /// `|t| - (k(n-step-1) + 1)`.
    pub surplus: i64,
    pub minimal: bool,
}

fn satisfies(g: &Graph, t: VertexSet, b: VertexSet, k: usize) -> bool {
    b.iter().all(|v| g.degree_into(v, b) < k) && t.iter().all(|v| g.degree_into(v, b) >= k)
}

/// A peel of the whole graph; `None` when no proper `T` exists.
pub fn peel_t(g: &Graph, k: usize) -> Result<Option<Peel>> {
    peel_within(g, g.vertices(), k)
}

/// A peel of the subgraph induced by `alive`.
pub fn peel_within(g: &Graph, alive: VertexSet, k: usize) -> Result<Option<Peel>> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    if !alive.is_subset(g.vertices()) {
        return Err(Error::Precondition("vertex set exceeds the graph".into()));
    }
    if alive.len() <= EXHAUSTIVE_PEEL_ORDER {
        Ok(exhaustive(g, alive, k))
    } else {
        Ok(greedy(g, alive, k))
    }
}

/// Smallest `T` first; among equal sizes the first in colexicographic order
/// over the candidate list.
fn exhaustive(g: &Graph, alive: VertexSet, k: usize) -> Option<Peel> {
    // a vertex of T has degree at least k inside alive
    let candidates: Vec<usize> = alive.iter().filter(|&v| g.degree_into(v, alive) >= k).collect();
    let c = candidates.len();
    for size in 0..=c {
        if size == alive.len() && size > 0 {
            break;
        }
        let mut mask: u64 = (1u64 << size) - 1;
        while mask < 1u64 << c {
            let t: VertexSet = (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
            let b = alive.difference(t);
            if satisfies(g, t, b, k) {
                return Some(Peel { t, b, minimal: true });
            }
            if mask == 0 {
                break;
            }
            let low = mask & mask.wrapping_neg();
            let r = mask + low;
            mask = (((r ^ mask) >> 2) / low) | r;
        }
    }
    None
}

/// Move high-degree vertices into `T`, repair vertices of `T` that lost
/// their outside neighbours, then drop redundant members.
fn greedy(g: &Graph, alive: VertexSet, k: usize) -> Option<Peel> {
    let mut t = VertexSet::EMPTY;
    let bound = 4 * alive.len() + 4;
    for _ in 0..bound {
        let b = alive.difference(t);
        if let Some(v) = b
            .iter()
            .filter(|&v| g.degree_into(v, b) >= k)
            .max_by_key(|&v| (g.degree_into(v, b), std::cmp::Reverse(v)))
        {
            t.insert(v);
            continue;
        }
        match t.iter().find(|&v| g.degree_into(v, b) < k) {
            Some(v) => t.remove(v),
            None => break,
        }
    }
    let b = alive.difference(t);
    if !satisfies(g, t, b, k) || (b.is_empty() && !t.is_empty()) {
        return None;
    }
    for v in t.iter() {
        let smaller = t.without(v);
        if satisfies(g, smaller, alive.difference(smaller), k) {
            t = smaller;
        }
    }
    Some(Peel { t, b: alive.difference(t), minimal: false })
}

/// Repeated peeling of `g` for the target `K_n`.
///
/// Step `i` peels the previous `T`, records `surplus = |T_i| - (k(n-i-1)+1)`
/// and stops once `surplus <= max(0, f(k, n-i))`, at step `n-3`, or when no
/// nonempty `T` exists. Step 1 always runs.
pub fn peel_cascade(g: &Graph, k: usize, n: usize) -> Result<Vec<PeelLayer>> {
    if k < 2 || n < 3 {
        return Err(Error::Domain(format!("need k >= 2 and n >= 3, got k={k}, n={n}")));
    }
    let mut layers = Vec::new();
    let mut current = g.vertices();
    for step in 1.. {
        let peel = match peel_within(g, current, k)? {
            Some(p) if !p.t.is_empty() => p,
            _ => break,
        };
        if !satisfies(g, peel.t, peel.b, k) || peel.t.union(peel.b) != current {
            return Err(Error::Construction(format!("layer {step} failed verification")));
        }
        let target = (k * (n.saturating_sub(step + 1)) + 1) as i64;
        let surplus = peel.t.len() as i64 - target;
        layers.push(PeelLayer { step, t: peel.t, b: peel.b, surplus, minimal: peel.minimal });
        current = peel.t;
        let cap = f_value(k as u64, (n - step.min(n)) as u64)?.max(0);
        if surplus <= cap || step + 3 >= n {
            break;
        }
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_peel() {
        let p = peel_t(&Graph::complete(5).unwrap(), 2).unwrap().unwrap();
        assert_eq!(p.t.len(), 3);
        assert!(p.minimal);
        assert!(p.verify(&Graph::complete(5).unwrap(), 2));
    }

    #[test]
    fn sparse_graph_needs_nothing() {
        let p = peel_t(&Graph::matching(3).unwrap(), 2).unwrap().unwrap();
        assert!(p.t.is_empty());
    }

    #[test]
    fn star_peels_its_centre() {
        let p = peel_t(&Graph::star(3).unwrap(), 2).unwrap().unwrap();
        assert_eq!(p.t.to_vec(), vec![0]);
    }

    #[test]
    fn exhaustive_matches_naive_scan() {
        use crate::graph::EnumOptions;
        for (_, level) in EnumOptions::new(15).with_isolated().on_order(6).levels().unwrap() {
            for g in level {
                for k in [2, 3] {
                    let all = g.vertices();
                    let naive = (0u64..1 << 6)
                        .map(VertexSet::from_bits)
                        .filter(|&t| t != all && satisfies(&g, t, all.difference(t), k))
                        .map(|t| t.len())
                        .min();
                    let found = peel_t(&g, k).unwrap();
                    assert_eq!(found.as_ref().map(|p| p.t.len()), naive, "{g:?} k={k}");
                    if let Some(p) = found {
                        assert!(p.verify(&g, k));
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_matches_conditions() {
        let g = Graph::complete(24).unwrap();
        let p = peel_t(&g, 3).unwrap().unwrap();
        assert!(!p.minimal);
        assert!(p.verify(&g, 3));
        assert_eq!(p.b.len(), 3);
        let sparse = Graph::cycle(30).unwrap();
        assert!(peel_t(&sparse, 3).unwrap().unwrap().t.is_empty());
    }

    #[test]
    fn cascade_examples() {
        let layers = peel_cascade(&Graph::complete(5).unwrap(), 2, 3).unwrap();
        assert_eq!(layers.len(), 1);
        assert_eq!(layers[0].t.len(), 3);
        assert_eq!(layers[0].surplus, 0);
        assert!(peel_cascade(&Graph::matching(3).unwrap(), 2, 3).unwrap().is_empty());
        let k7 = peel_cascade(&Graph::complete(7).unwrap(), 2, 4).unwrap();
        assert!(!k7.is_empty());
        for w in k7.windows(2) {
            assert!(w[1].t.len() < w[0].t.len());
            assert!(w[1].surplus <= w[0].surplus);
        }
        assert!(k7.iter().all(|l| l.b.len() >= 2));
    }

    #[test]
    fn layer_json() {
        let layers = peel_cascade(&Graph::complete(5).unwrap(), 2, 3).unwrap();
        let json = serde_json::to_string(&layers).unwrap();
        assert_eq!(json, r#"[{"step":1,"t":[0,1,2],"b":[3,4],"surplus":0,"minimal":true}]"#);
    }
}
