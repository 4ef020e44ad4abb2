//! A graph with more than `C(k,2)` edges either has `k+1` vertices inducing
//! minimum degree at least one, or is a matching.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`oracle_mindeg_subset`].
pub const ORACLE_ORDER_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyKind {
    MindegSubset,
    Matching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyResult {
    pub kind: DichotomyKind,
    /// `k+1` vertices inducing minimum degree at least one.
    pub subset: Option<VertexSet>,
    /// Edge count when the graph is a matching.
    pub matching_size: Option<usize>,
}

impl DichotomyResult {
    pub fn verify(&self, g: &Graph, k: usize) -> bool {
        match self.kind {
            DichotomyKind::MindegSubset => self
                .subset
                .is_some_and(|s| s.len() == k + 1 && s.is_subset(g.vertices()) && g.min_degree_within(s) >= 1),
            DichotomyKind::Matching => g.is_matching() && self.matching_size == Some(g.edge_count()),
        }
    }
}

pub(crate) enum Found {
    Subset(VertexSet),
    /// The alive part is a matching; the payload is the set of covered vertices.
    Matching(VertexSet),
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `k+1` vertices of minimum degree one, or a matching.
///
/// For odd `k` a matching with more than `C(k,2)` edges already contains
/// `(k+1)/2` disjoint edges, so the matching branch only occurs for even `k`.
pub fn mindeg_or_matching(g: &Graph, k: usize) -> Result<DichotomyResult> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let e = g.edge_count();
    if e < choose2(k) + 1 {
        return Err(Error::Precondition(format!("need more than C({k},2) = {} edges, got {e}", choose2(k))));
    }
    let result = match search_within(g, g.vertices(), k)? {
        Found::Subset(s) => DichotomyResult { kind: DichotomyKind::MindegSubset, subset: Some(s), matching_size: None },
        Found::Matching(_) => DichotomyResult { kind: DichotomyKind::Matching, subset: None, matching_size: Some(e) },
    };
    if !result.verify(g, k) {
        return Err(Error::Construction(format!("dichotomy output failed verification: {result:?}")));
    }
    Ok(result)
}

/// Same search restricted to `alive`, with the odd-`k` matching upgrade.
pub(crate) fn search_within(g: &Graph, alive: VertexSet, k: usize) -> Result<Found> {
    match search(g, alive, k)? {
        Found::Matching(y) if k % 2 == 1 => Ok(Found::Subset(matching_vertices(g, y, k.div_ceil(2), None)?)),
        found => Ok(found),
    }
}

fn search(g: &Graph, alive: VertexSet, k: usize) -> Result<Found> {
    let deg = |v: usize| g.degree_into(v, alive);
    if let Some(v) = alive.iter().find(|&v| deg(v) >= k) {
        let leaves = g.neighbours(v).intersection(alive).take_lowest(k).expect("degree at least k");
        return Ok(Found::Subset(leaves.with(v)));
    }
    if alive.iter().all(|v| deg(v) <= 1) {
        return Ok(Found::Matching(alive.iter().filter(|&v| deg(v) == 1).collect()));
    }
    let v = alive.iter().find(|&v| (2..k).contains(&deg(v))).expect("some degree in [2, k-1]");
    let rest = alive.without(v);
    let nv = g.neighbours(v).intersection(rest);
    let mut two = nv.iter();
    let (v1, v2) = (two.next().expect("degree >= 2"), two.next().expect("degree >= 2"));
    match search(g, rest, k - 1)? {
        Found::Subset(y) => {
            if !nv.is_disjoint(y) {
                return Ok(Found::Subset(y.with(v)));
            }
            for u in y.iter() {
                let x = y.without(u).with(v).with(v1);
                if g.min_degree_within(x) >= 1 {
                    return Ok(Found::Subset(x));
                }
            }
            if k % 2 == 1 || g.max_degree_within(y) != 1 {
                return Err(Error::Construction(format!(
                    "no vertex of {y:?} can be swapped for {v} and {v1}, yet it does not induce a matching"
                )));
            }
            let core = matching_vertices(g, y, (k - 2) / 2, None)?;
            Ok(Found::Subset(core.with(v).with(v1).with(v2)))
        }
        Found::Matching(y) => {
            if k % 2 == 1 {
                return Ok(Found::Subset(matching_vertices(g, y, k.div_ceil(2), None)?));
            }
            match nv.intersection(y).first() {
                Some(u) => Ok(Found::Subset(matching_vertices(g, y, k / 2, Some(u))?.with(v))),
                None => Ok(Found::Subset(matching_vertices(g, y, (k - 2) / 2, None)?.with(v).with(v1).with(v2))),
            }
        }
    }
}

/// Ends of `count` edges of the perfect matching induced on `y`, using the
/// edge at `must` first.
fn matching_vertices(g: &Graph, y: VertexSet, count: usize, must: Option<usize>) -> Result<VertexSet> {
    let partner = |u: usize| g.neighbours(u).intersection(y).first().expect("matched vertex");
    let mut out = VertexSet::EMPTY;
    if let Some(u) = must {
        out = out.with(u).with(partner(u));
    }
    for u in y.iter() {
        if out.len() >= 2 * count {
            break;
        }
        if !out.contains(u) {
            out = out.with(u).with(partner(u));
        }
    }
    if out.len() < 2 * count {
        return Err(Error::Construction(format!("matching on {y:?} has fewer than {count} edges")));
    }
    Ok(out)
}

/// First `(k+1)`-subset, in colexicographic order, inducing minimum degree
/// at least one.
pub fn oracle_mindeg_subset(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    let order = g.order();
    if order > ORACLE_ORDER_LIMIT {
        return Err(Error::Ceiling { what: "oracle order", ceiling: ORACLE_ORDER_LIMIT, got: order });
    }
    let size = k + 1;
    if size > order {
        return Ok(None);
    }
    let limit = 1u64 << order;
    let mut mask = (1u64 << size) - 1;
    while mask < limit {
        let s = VertexSet::from_bits(mask);
        if g.min_degree_within(s) >= 1 {
            return Ok(Some(s));
        }
        // next subset of the same size (Gosper)
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn path_gives_three_consecutive() {
        let r = mindeg_or_matching(&Graph::path(4).unwrap(), 2).unwrap();
        assert_eq!(r.kind, DichotomyKind::MindegSubset);
        let s = r.subset.unwrap();
        assert!(s == set(&[0, 1, 2]) || s == set(&[1, 2, 3]));
    }

    #[test]
    fn matching_branch() {
        let r = mindeg_or_matching(&Graph::matching(3).unwrap(), 2).unwrap();
        assert_eq!(r.kind, DichotomyKind::Matching);
        assert_eq!(r.matching_size, Some(3));
    }

    #[test]
    fn star_with_odd_k() {
        let r = mindeg_or_matching(&Graph::star(4).unwrap(), 3).unwrap();
        assert_eq!(r.subset, Some(set(&[0, 1, 2, 3])));
    }

    #[test]
    fn odd_k_matching_upgrades() {
        let r = mindeg_or_matching(&Graph::matching(4).unwrap(), 3).unwrap();
        assert_eq!(r.kind, DichotomyKind::MindegSubset);
        assert_eq!(r.subset.unwrap().len(), 4);
    }

    #[test]
    fn recursion_cases() {
        // C_8 with k = 4: every degree is 2, so the proof recurses
        let c8 = Graph::cycle(8).unwrap();
        let r = mindeg_or_matching(&c8, 4).unwrap();
        assert!(r.verify(&c8, 4));
        // two disjoint triangles and a pendant path, k = 4
        let g = Graph::from_edges(9, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8)]).unwrap();
        assert!(mindeg_or_matching(&g, 4).unwrap().verify(&g, 4));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(mindeg_or_matching(&Graph::path(3).unwrap(), 3), Err(Error::Precondition(_))));
        assert!(mindeg_or_matching(&Graph::path(3).unwrap(), 1).is_err());
    }

    #[test]
    fn oracle_examples() {
        let s = oracle_mindeg_subset(&Graph::cycle(5).unwrap(), 2).unwrap().unwrap();
        assert_eq!(s.len(), 3);
        assert!(Graph::cycle(5).unwrap().min_degree_within(s) >= 1);
        assert_eq!(oracle_mindeg_subset(&Graph::matching(3).unwrap(), 2).unwrap(), None);
        assert_eq!(oracle_mindeg_subset(&Graph::complete(4).unwrap(), 3).unwrap(), Some(set(&[0, 1, 2, 3])));
        assert!(oracle_mindeg_subset(&Graph::empty(17).unwrap(), 2).is_err());
    }
}
