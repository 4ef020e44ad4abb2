//! Closed forms for Ramsey-type quantities of `(K_{1,k}, K_n)`.
//!
//! All integer evaluators are exact and overflow-checked.

mod audit;

pub use audit::{audit_inequalities, audit_one, AuditReport, Grid, Inequality, NPolicy, NStart, Relation, Violation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Star size `k` and clique size `n`, both at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub k: u64,
    pub n: u64,
}

impl Params {
    pub fn new(k: u64, n: u64) -> Result<Self> {
        if k < 2 || n < 2 {
            return Err(Error::Domain(format!("need k >= 2 and n >= 2, got k={k}, n={n}")));
        }
        Ok(Params { k, n })
    }
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

fn sub(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

/// `C(x, 2)`.
pub fn choose2(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    // one of x, x-1 is even
    if x.is_multiple_of(2) {
        mul(x / 2, x - 1, "binomial")
    } else {
        mul(x, (x - 1) / 2, "binomial")
    }
}

/// `r(K_{1,k}, K_n) = k(n-1) + 1`.
pub fn ramsey_star_clique(p: Params) -> Result<u64> {
    add(mul(p.k, p.n - 1, "ramsey number")?, 1, "ramsey number")
}

/// Restricted size Ramsey number `r̂*(K_{1,k}, K_n)`:
/// `C(R,2) - C(k,2)` when `k >= n` or `k` is odd, else `C(R,2) - k(n-1)/2`.
pub fn rhat_star(p: Params) -> Result<u64> {
    let whole = choose2(ramsey_star_clique(p)?)?;
    let removed = if p.k >= p.n || p.k % 2 == 1 { choose2(p.k)? } else { mul(p.k / 2, p.n - 1, "restricted size Ramsey number")? };
    sub(whole, removed, "restricted size Ramsey number")
}

/// `k^3 + 2k^2 + 2k`, the smallest `n` covered by [`rhat_theorem3`].
pub fn theorem3_threshold(k: u64) -> Result<u64> {
    let k2 = mul(k, k, "threshold")?;
    let k3 = mul(k2, k, "threshold")?;
    add(add(k3, mul(2, k2, "threshold")?, "threshold")?, mul(2, k, "threshold")?, "threshold")
}

/// `r̂(K_{1,k}, K_n)` in the large-`n` regime `n >= k^3 + 2k^2 + 2k`, where it
/// equals `r̂*`: `C(R,2) - C(k,2)` for odd `k`, `C(R,2) - k(n-1)/2` for even.
pub fn rhat_theorem3(p: Params) -> Result<u64> {
    let threshold = theorem3_threshold(p.k)?;
    if p.n < threshold {
        return Err(Error::Domain(format!(
            "large-n formula needs n >= {threshold} for k = {}, got n = {}",
            p.k, p.n
        )));
    }
    let whole = choose2(ramsey_star_clique(p)?)?;
    let removed = if p.k % 2 == 1 { choose2(p.k)? } else { mul(p.k / 2, p.n - 1, "size Ramsey number")? };
    sub(whole, removed, "size Ramsey number")
}

/// `f(k, n) = floor((kn - 2k^2) / (k+1)^2)`; negative for small `n`.
pub fn f_threshold(p: Params) -> Result<i64> {
    f_value(p.k, p.n)
}

/// `f(k, n)` without the `n >= 2` restriction, as used for `m_j = f(k, n-j)`.
pub fn f_value(k: u64, n: u64) -> Result<i64> {
    let k = i64::try_from(k).map_err(|_| Error::Overflow("f threshold"))?;
    let n = i64::try_from(n).map_err(|_| Error::Overflow("f threshold"))?;
    let num = k
        .checked_mul(n)
        .and_then(|kn| k.checked_mul(k).and_then(|k2| kn.checked_sub(2 * k2)))
        .ok_or(Error::Overflow("f threshold"))?;
    let den = (k + 1).checked_mul(k + 1).ok_or(Error::Overflow("f threshold"))?;
    Ok(num.div_euclid(den))
}

/// `R' = C(k,2) + 1` for odd `k`, `k(n-1)/2 + 1` for even `k`.
pub fn r_prime(p: Params) -> Result<u64> {
    let base = if p.k % 2 == 1 { choose2(p.k)? } else { mul(p.k / 2, p.n - 1, "R'")? };
    add(base, 1, "R'")
}

/// `k^2 C(n-1, 2)`: every arrowing graph has at least this many edges.
pub fn pikhurko_lower_bound(k: u64, n: u64) -> Result<u64> {
    if k < 2 || n < 1 {
        return Err(Error::Domain(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    mul(mul(k, k, "edge lower bound")?, choose2(n - 1)?, "edge lower bound")
}

/// `max{k^2/2, (1-ε) floor((n-2)^2/4) k^2/2}`.
pub fn erdos_etal_lower_bound(k: u64, n: u64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    let half_k2 = (k * k) as f64 / 2.0;
    let quarter = ((n - 2) * (n - 2) / 4) as f64;
    Ok(half_k2.max((1.0 - eps) * quarter * half_k2))
}

/// `k^2 + sqrt(2) k^{3/2} + k`.
pub fn pikhurko_counterexample_bound(k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("need k >= 1".into()));
    }
    let k = k as f64;
    Ok(k * k + std::f64::consts::SQRT_2 * k.powf(1.5) + k)
}

/// Raw values on both sides of the comparison between the counterexample
/// bound and the edge count `C(2k+1,2) - C(k,2)` of `K_{k+1} + \bar{K}_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleComparison {
    pub k: u64,
    pub bound: f64,
    pub construction_edges: u64,
    /// True when the bound lies strictly below the construction.
    pub strictly_below: bool,
}

pub fn compare_counterexample(k: u64) -> Result<CounterexampleComparison> {
    let bound = pikhurko_counterexample_bound(k)?;
    let construction_edges = sub(choose2(add(mul(2, k, "construction")?, 1, "construction")?)?, choose2(k)?, "construction")?;
    Ok(CounterexampleComparison { k, bound, construction_edges, strictly_below: bound < construction_edges as f64 })
}

/// Every closed form for one parameter pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaRow {
    pub k: u64,
    pub n: u64,
    pub ramsey: u64,
    pub rhat_star: u64,
    /// `None` below the large-`n` threshold.
    pub rhat_theorem3: Option<u64>,
    pub f_threshold: i64,
    pub r_prime: u64,
    pub edge_lower_bound: u64,
    pub complete_graph_edges: u64,
}

pub fn formula_row(p: Params) -> Result<FormulaRow> {
    let ramsey = ramsey_star_clique(p)?;
    Ok(FormulaRow {
        k: p.k,
        n: p.n,
        ramsey,
        rhat_star: rhat_star(p)?,
        rhat_theorem3: rhat_theorem3(p).ok(),
        f_threshold: f_threshold(p)?,
        r_prime: r_prime(p)?,
        edge_lower_bound: pikhurko_lower_bound(p.k, p.n)?,
        complete_graph_edges: choose2(ramsey)?,
    })
}
