//! Disjoint `(k+1)`-sets of minimum degree one in a dense host, and the
//! good colouring they induce on the complement.

use serde::{Deserialize, Serialize};

use super::dichotomy::{search_within, Found};
use crate::arrowing::{check_params, verify_colouring, TwoColouring};
use crate::error::{Error, Result};
use crate::formulas::{f_value, r_prime, ramsey_star_clique, Params};
use crate::graph::{Graph, VertexSet};

/// Pairwise disjoint parts of size `k+1`, each inducing minimum degree at
/// least one in `host`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub host: Graph,
    pub k: usize,
    pub parts: Vec<VertexSet>,
}

impl Packing {
    pub fn verify(&self) -> bool {
        let mut used = VertexSet::EMPTY;
        for &part in &self.parts {
            if part.len() != self.k + 1
                || !part.is_subset(self.host.vertices())
                || !part.is_disjoint(used)
                || self.host.min_degree_within(part) < 1
            {
                return false;
            }
            used = used.union(part);
        }
        true
    }
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `R t + C(t,2) + R'`.
fn edge_threshold(k: usize, n: usize, t: usize) -> Result<usize> {
    let p = Params::new(k as u64, n as u64)?;
    let big_r = ramsey_star_clique(p)? as usize;
    Ok(big_r * t + choose2(t) + r_prime(p)? as usize)
}

/// `t+1` disjoint parts in a host on `R+t` vertices with at least
/// `R t + C(t,2) + R'` edges, where `n >= 3k+3` and `t <= f(k,n)`.
pub fn disjoint_packing(h: &Graph, k: usize, n: usize, t: usize) -> Result<Packing> {
    check_params(k, n)?;
    if n < 3 * k + 3 {
        return Err(Error::Precondition(format!("need n >= 3k+3 = {}, got {n}", 3 * k + 3)));
    }
    let f = f_value(k as u64, n as u64)?;
    if t as i64 > f {
        return Err(Error::Precondition(format!("need t <= f(k,n) = {f}, got {t}")));
    }
    let big_r = k * (n - 1) + 1;
    if h.order() != big_r + t {
        return Err(Error::Precondition(format!("need {} vertices, got {}", big_r + t, h.order())));
    }
    let need = edge_threshold(k, n, t)?;
    if h.edge_count() < need {
        return Err(Error::Precondition(format!("need at least {need} edges, got {}", h.edge_count())));
    }
    let parts = pack(h, h.vertices(), k, t)?;
    let packing = Packing { host: h.clone(), k, parts };
    if !packing.verify() {
        return Err(Error::Construction("packing failed verification".into()));
    }
    Ok(packing)
}

/// `t+1` parts inside `alive`; errors when a residual extraction fails.
fn pack(h: &Graph, alive: VertexSet, k: usize, t: usize) -> Result<Vec<VertexSet>> {
    if t == 0 {
        return Ok(vec![extract(h, alive, k)?]);
    }
    let heavy = (k + 1) * (t + 1);
    if let Some(v) = alive.iter().find(|&v| h.degree_into(v, alive) >= heavy) {
        let mut parts = pack(h, alive.without(v), k, t - 1)?;
        let used = parts.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
        let fresh = h.neighbours(v).intersection(alive).difference(used);
        let leaves = fresh
            .take_lowest(k)
            .ok_or_else(|| Error::Construction(format!("vertex {v} has only {} fresh neighbours", fresh.len())))?;
        parts.push(leaves.with(v));
        return Ok(parts);
    }
    let mut parts = pack(h, alive, k, t - 1)?;
    let used = parts.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
    parts.push(extract(h, alive.difference(used), k)?);
    Ok(parts)
}

fn extract(h: &Graph, alive: VertexSet, k: usize) -> Result<VertexSet> {
    let e = h.edges_within(alive);
    if e < choose2(k) + 1 {
        return Err(Error::Construction(format!("residual has {e} edges, at most C({k},2)")));
    }
    match search_within(h, alive, k)? {
        Found::Subset(s) => Ok(s),
        Found::Matching(_) => Err(Error::Construction(format!("residual is a matching with {e} edges"))),
    }
}

/// A good colouring of `g` built from a packing of its complement, when the
/// complement is dense enough for one.
///
/// `g` must have `R + l` vertices with `0 <= l <= n-2`. The parts of the
/// packing and then `n-2-l` blocks of `k` remaining vertices partition the
/// vertex set; edges inside a block are red and all others blue.
///
/// Returns `None` when the complement has fewer than `R l + C(l,2) + R'`
/// edges, or, outside the regime `n >= 3k+3`, `l <= f(k,n)`, when the
/// packing cannot be completed.
pub fn good_colouring(g: &Graph, k: usize, n: usize) -> Result<Option<TwoColouring>> {
    check_params(k, n)?;
    let big_r = k * (n - 1) + 1;
    if g.order() < big_r || g.order() - big_r > n - 2 {
        return Err(Error::Precondition(format!(
            "need between {big_r} and {} vertices, got {}",
            big_r + n - 2,
            g.order()
        )));
    }
    let ell = g.order() - big_r;
    let complement = g.complement();
    if complement.edge_count() < edge_threshold(k, n, ell)? {
        return Ok(None);
    }
    let in_regime = n >= 3 * k + 3 && (ell as i64) <= f_value(k as u64, n as u64)?;
    let parts = match pack(&complement, complement.vertices(), k, ell) {
        Ok(parts) => parts,
        Err(Error::Construction(_)) if !in_regime => return Ok(None),
        Err(e) => return Err(e),
    };
    let used = parts.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
    let rest = g.vertices().difference(used).to_vec();
    let blocks: Vec<VertexSet> =
        parts.into_iter().chain(rest.chunks(k).map(|c| c.iter().copied().collect())).collect();
    debug_assert_eq!(blocks.len(), n - 1);
    let red: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|&(u, v)| blocks.iter().any(|b| b.contains(u) && b.contains(v))).collect();
    let colouring = TwoColouring::with_red_edges(g.clone(), &red)?;
    if !verify_colouring(&colouring, k, n)?.is_good() {
        return Err(Error::Construction("block colouring is not good".into()));
    }
    Ok(Some(colouring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrowing::brute_force_arrows;

    #[test]
    fn clique_host_single_part() {
        let h = Graph::complete(21).unwrap();
        let p = disjoint_packing(&h, 2, 11, 0).unwrap();
        assert_eq!(p.parts.len(), 1);
        assert!(p.verify());
    }

    #[test]
    fn two_parts_inside_small_clique() {
        let h = Graph::complete(9).unwrap().disjoint_union(&Graph::empty(13).unwrap()).unwrap();
        assert_eq!(h.edge_count(), 36);
        let p = disjoint_packing(&h, 2, 11, 1).unwrap();
        assert_eq!(p.parts.len(), 2);
        assert!(p.verify());
        let k9 = VertexSet::full(9);
        assert!(p.parts.iter().all(|part| part.is_subset(k9)));
    }

    #[test]
    fn sparse_host_rejected() {
        let h = Graph::matching(11).unwrap();
        assert!(matches!(disjoint_packing(&h, 2, 11, 1), Err(Error::Precondition(_))));
        assert!(disjoint_packing(&Graph::complete(21).unwrap(), 2, 8, 0).is_err());
        assert!(disjoint_packing(&Graph::complete(21).unwrap(), 2, 11, 2).is_err());
    }

    #[test]
    fn packing_json_lists_vertices() {
        let p = disjoint_packing(&Graph::complete(21).unwrap(), 2, 11, 0).unwrap();
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["parts"][0], serde_json::json!([0, 1, 2]));
        let back: Packing = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn colouring_of_k5_minus_triangle() {
        let mut g = Graph::complete(5).unwrap();
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            g.remove_edge(u, v).unwrap();
        }
        let c = good_colouring(&g, 2, 3).unwrap().unwrap();
        assert_eq!(c.red_edges(), vec![(3, 4)]);
        assert!(!brute_force_arrows(&g, 2, 3).unwrap());
    }

    #[test]
    fn dense_hosts_have_none() {
        assert_eq!(good_colouring(&Graph::complete(5).unwrap(), 2, 3).unwrap(), None);
        let mut g = Graph::complete(5).unwrap();
        g.remove_edge(3, 4).unwrap();
        assert_eq!(good_colouring(&g, 2, 3).unwrap(), None);
    }

    #[test]
    fn order_checked() {
        assert!(good_colouring(&Graph::complete(4).unwrap(), 2, 3).is_err());
        assert!(good_colouring(&Graph::complete(7).unwrap(), 2, 3).is_err());
        assert!(good_colouring(&Graph::empty(6).unwrap(), 2, 3).unwrap().is_some());
    }

    #[test]
    fn in_regime_example() {
        // k = 2, n = 9: R = 17, f = 1; a sparse 18-vertex host
        let g = Graph::cycle(18).unwrap();
        let c = good_colouring(&g, 2, 9).unwrap().unwrap();
        assert!(verify_colouring(&c, 2, 9).unwrap().is_good());
    }
}
