//! Candidate extremal graphs and exact `r̂`, `r̂*` by exhaustion.
//!
//! Both searches walk isomorphism classes in ascending edge count and run
//! the arrowing engine on every class. A value is exact only when every
//! class below it was certified non-arrowing; if the engine gives up on any
//! of them the result is downgraded to bounds.

use serde::{Deserialize, Serialize};

use crate::arrowing::{arrows_with, EngineConfig};
use crate::error::{Error, Result};
use crate::formulas::{ramsey_star_clique, rhat_star, rhat_theorem3, Params};
use crate::graph::{EnumOptions, Graph, MAX_ORDER};
use crate::par::{self, Exec};

/// Largest `R = k(n-1)+1` for which [`compute_rhat_star`] enumerates.
pub const RHAT_STAR_MAX_ORDER: usize = 8;

/// `K_{k+1}` joined to an independent set of `k` vertices.
///
/// Vertices `0..=k` form the clique.
pub fn erdos_graph(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::Domain("need k >= 1".into()));
    }
    let order = 2 * k + 1;
    let mut g = Graph::complete(order)?;
    for u in k + 1..order {
        for v in u + 1..order {
            g.remove_edge(u, v)?;
        }
    }
    Ok(g)
}

/// A graph on `R = k(n-1)+1` vertices with exactly `r̂*(K_{1,k}, K_n)` edges.
///
/// `K_R` minus a `K_k` on `0..k` when `k >= n` or `k` is odd; otherwise
/// `K_R` minus the matching `(0,1), (2,3), ..., (R-3, R-2)`.
pub fn extremal_candidate(p: Params) -> Result<Graph> {
    let order = usize::try_from(ramsey_star_clique(p)?).map_err(|_| Error::Overflow("order"))?;
    if order > MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    let k = p.k as usize;
    let mut g = Graph::complete(order)?;
    if p.k >= p.n || p.k % 2 == 1 {
        for u in 0..k {
            for v in u + 1..k {
                g.remove_edge(u, v)?;
            }
        }
    } else {
        for u in (0..order - 1).step_by(2) {
            g.remove_edge(u, u + 1)?;
        }
    }
    Ok(g)
}

/// Knobs for the exhaustive searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub engine: EngineConfig,
    /// Largest edge count enumerated by [`compute_rhat`].
    pub max_edges: usize,
    /// Spreads classes of one level over the thread pool.
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { engine: EngineConfig::sequential(), max_edges: 10, exec: Exec::default() }
    }
}

/// A certified exact value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub params: Params,
    pub value: u64,
    /// Arrows and has `value` edges.
    pub witness: Graph,
    /// What was certified non-arrowing below `value`.
    pub exhausted: String,
    /// Classes run through the engine, the witness included.
    pub classes_checked: u64,
}

/// What is known when the search could not finish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub params: Params,
    /// Every class with fewer edges was certified non-arrowing.
    pub lower: u64,
    /// Edge count of a verified arrowing graph, if one is known.
    pub upper: Option<u64>,
    pub witness: Option<Graph>,
    pub reason: String,
    pub classes_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Exact(ExactResult),
    Bounds(Bounds),
}

impl SearchOutcome {
    pub fn exact_value(&self) -> Option<u64> {
        match self {
            SearchOutcome::Exact(r) => Some(r.value),
            SearchOutcome::Bounds(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SearchOutcome::Exact(_))
    }

    pub fn witness(&self) -> Option<&Graph> {
        match self {
            SearchOutcome::Exact(r) => Some(&r.witness),
            SearchOutcome::Bounds(b) => b.witness.as_ref(),
        }
    }
}

enum Scan {
    Found { value: u64, witness: Graph, checked: u64 },
    Stuck { lower: u64, reason: String, checked: u64 },
    Exhausted { through: u64, checked: u64 },
}

/// Runs the engine over `levels` until a level contains an arrowing class.
fn scan(levels: impl Iterator<Item = (usize, Vec<Graph>)>, p: Params, config: &SearchConfig) -> Result<Scan> {
    let (k, n) = (p.k as usize, p.n as usize);
    let mut checked = 0u64;
    let mut through = 0u64;
    for (edges, level) in levels {
        let verdicts = par::map(config.exec, &level, |g| arrows_with(g, k, n, &config.engine).map(|d| d.arrows));
        checked += level.len() as u64;
        let mut stuck = None;
        for (g, verdict) in level.iter().zip(verdicts) {
            match verdict {
                Ok(true) => return Ok(Scan::Found { value: edges as u64, witness: g.clone(), checked }),
                Ok(false) => {}
                Err(Error::BudgetExceeded(why)) => {
                    stuck.get_or_insert(why);
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(reason) = stuck {
            return Ok(Scan::Stuck { lower: edges as u64, reason, checked });
        }
        through = edges as u64;
    }
    Ok(Scan::Exhausted { through, checked })
}

/// An arrowing graph with `r̂*` edges, if the engine can confirm one.
fn known_upper(p: Params, config: &SearchConfig) -> Option<Graph> {
    let g = extremal_candidate(p).ok()?;
    arrows_with(&g, p.k as usize, p.n as usize, &config.engine).ok().filter(|d| d.arrows).map(|_| g)
}

fn bounds(p: Params, lower: u64, reason: String, checked: u64, config: &SearchConfig) -> SearchOutcome {
    let witness = known_upper(p, config);
    SearchOutcome::Bounds(Bounds {
        params: p,
        lower,
        upper: witness.as_ref().map(|g| g.edge_count() as u64),
        witness,
        reason,
        classes_checked: checked,
    })
}

/// Fewest edges of an arrowing graph on exactly `R = k(n-1)+1` vertices.
pub fn compute_rhat_star(p: Params, config: &SearchConfig) -> Result<SearchOutcome> {
    let order = ramsey_star_clique(p)? as usize;
    if order > RHAT_STAR_MAX_ORDER {
        return Err(Error::Ceiling { what: "order R for exhaustive search", ceiling: RHAT_STAR_MAX_ORDER, got: order });
    }
    let total = order * (order - 1) / 2;
    let levels = EnumOptions::new(total).with_isolated().on_order(order).exec(config.exec).levels()?;
    Ok(match scan(levels, p, config)? {
        Scan::Found { value, witness, checked } => SearchOutcome::Exact(ExactResult {
            params: p,
            value,
            witness,
            exhausted: format!(
                "all {order}-vertex isomorphism classes with at most {} edges are non-arrowing",
                value.saturating_sub(1)
            ),
            classes_checked: checked,
        }),
        Scan::Stuck { lower, reason, checked } => bounds(p, lower, reason, checked, config),
        Scan::Exhausted { checked, .. } => {
            return Err(Error::Construction(format!(
                "no {order}-vertex graph arrows after {checked} classes, yet K_{order} must"
            )))
        }
    })
}

/// Fewest edges of any arrowing graph.
///
/// Only connected classes are enumerated: both targets are connected, so an
/// arrowing graph has an arrowing component with no more edges.
pub fn compute_rhat(p: Params, config: &SearchConfig) -> Result<SearchOutcome> {
    let levels = EnumOptions::new(config.max_edges).connected().exec(config.exec).levels()?;
    Ok(match scan(levels, p, config)? {
        Scan::Found { value, witness, checked } => SearchOutcome::Exact(ExactResult {
            params: p,
            value,
            witness,
            exhausted: format!(
                "all connected isomorphism classes with at most {} edges are non-arrowing; \
                 an arrowing graph has an arrowing component",
                value.saturating_sub(1)
            ),
            classes_checked: checked,
        }),
        Scan::Stuck { lower, reason, checked } => bounds(p, lower, reason, checked, config),
        Scan::Exhausted { through, checked } => bounds(
            p,
            through + 1,
            format!("no connected graph with at most {through} edges arrows; enumeration stops there"),
            checked,
            config,
        ),
    })
}

/// One parameter pair of the gap table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRow {
    pub k: u64,
    pub n: u64,
    /// Exact `r̂` when computed.
    pub rhat: Option<u64>,
    /// Exact `r̂*` when computed.
    pub rhat_star: Option<u64>,
    /// Closed form for `r̂*`.
    pub closed_form: u64,
    /// Large-`n` closed form for `r̂`, where it applies.
    pub large_n_form: Option<u64>,
    /// Both searches finished with exact values.
    pub exact: bool,
    /// `r̂ == r̂*` when both are known.
    pub equal: Option<bool>,
    pub witness_graph6: Option<String>,
    /// `computed`, `partial`, `bounds`, or `not computed`.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
    pub note: String,
}

/// Rows for `2 <= k <= k_max`, `2 <= n <= n_max`.
///
/// `r̂*` is computed when `R` fits [`RHAT_STAR_MAX_ORDER`], `r̂` when the
/// closed form for `r̂*` is within `config.max_edges`.
pub fn conjecture_gap_report(k_max: u64, n_max: u64, config: &SearchConfig) -> Result<GapReport> {
    let mut rows = Vec::new();
    for k in 2..=k_max {
        for n in 2..=n_max {
            let p = Params::new(k, n)?;
            let closed_form = rhat_star(p)?;
            let star = if ramsey_star_clique(p)? as usize <= RHAT_STAR_MAX_ORDER {
                Some(compute_rhat_star(p, config)?)
            } else {
                None
            };
            let full = if closed_form as usize <= config.max_edges { Some(compute_rhat(p, config)?) } else { None };
            let rhat = full.as_ref().and_then(SearchOutcome::exact_value);
            let rhat_star_value = star.as_ref().and_then(SearchOutcome::exact_value);
            let status = match (&star, &full) {
                (None, None) => "not computed",
                _ if rhat.is_some() && rhat_star_value.is_some() => "computed",
                _ if star.iter().chain(full.iter()).any(|o| !o.is_exact()) => "bounds",
                _ => "partial",
            };
            let witness_graph6 =
                full.as_ref().or(star.as_ref()).and_then(|o| o.witness()).map(crate::graph::to_graph6);
            rows.push(GapRow {
                k,
                n,
                rhat,
                rhat_star: rhat_star_value,
                closed_form,
                large_n_form: rhat_theorem3(p).ok(),
                exact: rhat.is_some() && rhat_star_value.is_some(),
                equal: rhat.zip(rhat_star_value).map(|(a, b)| a == b),
                witness_graph6,
                status: status.into(),
            });
        }
    }
    let smallest = Params::new(2, 20)?;
    let note = format!(
        "the large-n regime n >= k^3 + 2k^2 + 2k starts at k = 2, n = 20, where R = {} vertices and the \
         closed form is {}; exhaustive search cannot reach it, so that regime is covered only by the \
         formula checks and the inequality audit",
        ramsey_star_clique(smallest)?,
        rhat_star(smallest)?
    );
    Ok(GapReport { rows, note })
}
