//! Canonical labelling by partition refinement and individualisation.
//!
//! Components are labelled independently and concatenated in sorted order.
//! Inside a component the search tree is explored in full except for
//! branches that an automorphism fixing the current prefix maps onto an
//! explored branch: transpositions of twins, plus automorphisms discovered
//! at equal leaves. The canonical graph is the leaf with the largest
//! adjacency key.

use super::{to_graph6, Graph};

/// Vertex counts above which the exhaustive labelling refuses to run.
const EXHAUSTIVE_LIMIT: usize = 8;
/// Stored automorphisms per component search.
const AUTOMORPHISM_CAP: usize = 64;

/// Certificate string: graph6 of the canonically relabelled graph.
/// Equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> String {
    let perm = canonical_labeling(g);
    to_graph6(&g.permute(&perm).expect("canonical labelling is a permutation"))
}

/// `perm[v]` is the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let comps = g.components();
    if comps.len() == 1 {
        return label_connected(g).1;
    }
    // (size, key, labelling, members)
    type Labelled = (usize, Vec<u64>, Vec<usize>, Vec<usize>);
    let mut labelled: Vec<Labelled> = comps
        .iter()
        .map(|&c| {
            let members = c.to_vec();
            let sub = g.induced(c).expect("component is nonempty");
            let (key, perm) = label_connected(&sub);
            (members.len(), key, perm, members)
        })
        .collect();
    // Larger components first, then by key; both are isomorphism invariants.
    labelled.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(&a.1)));
    let mut out = vec![0; g.order()];
    let mut offset = 0;
    for (size, _, perm, members) in labelled {
        for (local, &v) in members.iter().enumerate() {
            out[v] = offset + perm[local];
        }
        offset += size;
    }
    out
}

/// Brute-force canonical form over all `order!` relabellings (order ≤ 8).
///
/// Uses a different leaf selection than [`canonical_form`], so only the
/// induced equivalence relation is comparable, not the strings themselves.
pub fn canonical_form_exhaustive(g: &Graph) -> Option<String> {
    let n = g.order();
    if n > EXHAUSTIVE_LIMIT {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = leaf_key(g, &perm);
    let mut best_perm = perm.clone();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let key = leaf_key(g, &perm);
            if key > best {
                best = key;
                best_perm.clone_from(&perm);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some(to_graph6(&g.permute(&best_perm).expect("permutation")))
}

fn leaf_key(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; g.order()];
    for (v, &row) in g.rows().iter().enumerate() {
        let mut mapped = 0u64;
        let mut r = row;
        while r != 0 {
            let w = r.trailing_zeros() as usize;
            r &= r - 1;
            mapped |= 1 << perm[w];
        }
        rows[perm[v]] = mapped;
    }
    rows
}

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

fn label_connected(g: &Graph) -> (Vec<u64>, Vec<usize>) {
    let mut s = Search { g, best: None, first: None, autos: Vec::new() };
    let unit = vec![(0..g.order()).collect()];
    s.descend(unit, &mut Vec::new());
    s.best.expect("search reaches at least one leaf")
}

impl Search<'_> {
    fn descend(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let rows = self.g.rows();
        rows[u] & !(1 << v) == rows[v] & !(1 << u)
    }

    /// Whether the automorphisms found so far that fix `prefix` pointwise
    /// map `v` into the orbit of an explored vertex.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&x| gamma[x] != x) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate().take(n) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.order();
        let mut perm = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let key = leaf_key(self.g, &perm);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == key {
                let mut inverse = vec![0; n];
                for (v, &p) in reference.1.iter().enumerate() {
                    inverse[p] = v;
                }
                let gamma: Vec<usize> = (0..n).map(|w| inverse[perm[w]]).collect();
                if gamma.iter().enumerate().any(|(i, &x)| i != x)
                    && self.autos.len() < AUTOMORPHISM_CAP
                {
                    self.autos.push(gamma);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((key.clone(), perm.clone()));
        }
        if self.best.as_ref().is_none_or(|b| key > b.0) {
            self.best = Some((key, perm));
        }
    }
}

/// Equitable refinement: split every cell by neighbour counts into all
/// cells until stable. Sub-cells are ordered by their count vectors, so the
/// result commutes with relabelling.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let rows = g.rows();
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|&m| (rows[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            changed |= keyed[0].0 != keyed[keyed.len() - 1].0;
        }
        if !changed {
            return next;
        }
        cells = next;
    }
}
