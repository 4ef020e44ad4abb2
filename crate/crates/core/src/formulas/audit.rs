//! Exact audit of the arithmetic behind the lower-bound argument.
//!
//! Each [`Inequality`] is a polynomial or rational statement in `k`, `n` and
//! possibly one running index (`j` for peeling depth, `t` for packing size).
//! Sums over the surplus sequence are replaced by the lower bounds
//! `(k(n-i) - 2k^2)/(k+1)^2` exactly as the argument does.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Exec};

type Q = Ratio<i128>;

/// Largest `k` the auditor accepts; keeps every intermediate inside `i128`.
pub const AUDIT_MAX_K: u64 = 50;
/// Largest window of `n` values per `k`.
pub const AUDIT_MAX_WINDOW: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs >= rhs`.
    Ge,
    /// `lhs == rhs`: an algebraic step of the argument.
    Eq,
}

impl Relation {
    fn holds(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// The audited statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `Rt + C(t,2) + t(k+1) + t(k+1)/2 - t(t+1)(k+1)^2 >= 0`, `0 <= t <= f(k,n)`.
    PackingBudget,
    /// Removing a vertex of degree at most `R+t-1` leaves the budget for `t-1`.
    PackingHighDegreeResidual,
    /// Removing `t` parts of low-degree vertices leaves `R'` edges.
    PackingLowDegreeExpansion,
    /// `k(k(n-2)+1+ceil(k/2)) >= (k^2(2n-3)+2k)/2`.
    SingleStepStarEdges,
    /// `r*(n-1) + (k^2(2n-3)+2k)/2 >= r*(n)`.
    SingleStepWideTotal,
    /// Replacing the floor by the exact quotient only loses.
    SingleStepFloor,
    /// `((kn-2k^2)/(k+1)^2 + floor(k/2) + 1)(n-k) >= (k^2(2n-3)+k)/2`.
    SingleStepGrowth,
    /// `r*(n-1) + (k^2(2n-3)+k)/2 >= r*(n)`.
    SingleStepNarrowTotal,
    /// `2kn - kj - 4k^2 - (k-2)(k+1)^2 j/(j-1) >= 0`, `2 <= j <= n-3k-3`.
    MidDepth,
    /// Odd-`k` counterpart with `(k-1)` in place of `(k-2)`.
    MidDepthOdd,
    /// The surplus sum rewritten as the factored form.
    MidDepthChain,
    /// Excess of the layered edge count over `r*(n)` before the surplus sum.
    MidDepthReduction,
    /// `f(k, n-j) >= 1` for `1 <= j <= n-3k-3`.
    MidDepthThreshold,
    /// `k(n-3k-3)(n-k+2) - (k+1)^2(k-2)j >= 0`, `n-3k-2 <= j <= n-4`.
    Deep,
    /// Odd-`k` counterpart with `(k-1)` in place of `(k-2)`.
    DeepOdd,
    /// Closed form of the surplus lower-bound sum.
    DeepSum,
    /// `[k^2(n-3k-3)(n-k+2) + (7k^2-2k+2kn)(k+1)^2]/(k+1)^2 >= k^2 n + 6k`.
    FullDepthEven,
    /// The surplus lower bounds collapse to the left side of [`Inequality::FullDepthEven`].
    FullDepthEvenChain,
    /// `2k L + 2k^2 + kn >= k^2 n + 6k` with `L` the surplus lower bound.
    FullDepthOdd,
    /// Target reduction at full depth for either parity.
    FullDepthReduction,
}

impl Inequality {
    pub const ALL: [Inequality; 20] = [
        Inequality::PackingBudget,
        Inequality::PackingHighDegreeResidual,
        Inequality::PackingLowDegreeExpansion,
        Inequality::SingleStepStarEdges,
        Inequality::SingleStepWideTotal,
        Inequality::SingleStepFloor,
        Inequality::SingleStepGrowth,
        Inequality::SingleStepNarrowTotal,
        Inequality::MidDepth,
        Inequality::MidDepthOdd,
        Inequality::MidDepthChain,
        Inequality::MidDepthReduction,
        Inequality::MidDepthThreshold,
        Inequality::Deep,
        Inequality::DeepOdd,
        Inequality::DeepSum,
        Inequality::FullDepthEven,
        Inequality::FullDepthEvenChain,
        Inequality::FullDepthOdd,
        Inequality::FullDepthReduction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Inequality::PackingBudget => "packing_budget",
            Inequality::PackingHighDegreeResidual => "packing_high_degree_residual",
            Inequality::PackingLowDegreeExpansion => "packing_low_degree_expansion",
            Inequality::SingleStepStarEdges => "single_step_star_edges",
            Inequality::SingleStepWideTotal => "single_step_wide_total",
            Inequality::SingleStepFloor => "single_step_floor",
            Inequality::SingleStepGrowth => "single_step_growth",
            Inequality::SingleStepNarrowTotal => "single_step_narrow_total",
            Inequality::MidDepth => "mid_depth",
            Inequality::MidDepthOdd => "mid_depth_odd",
            Inequality::MidDepthChain => "mid_depth_chain",
            Inequality::MidDepthReduction => "mid_depth_reduction",
            Inequality::MidDepthThreshold => "mid_depth_threshold",
            Inequality::Deep => "deep",
            Inequality::DeepOdd => "deep_odd",
            Inequality::DeepSum => "deep_sum",
            Inequality::FullDepthEven => "full_depth_even",
            Inequality::FullDepthEvenChain => "full_depth_even_chain",
            Inequality::FullDepthOdd => "full_depth_odd",
            Inequality::FullDepthReduction => "full_depth_reduction",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.id() == id)
    }

    pub fn relation(self) -> Relation {
        use Inequality::*;
        match self {
            PackingHighDegreeResidual | PackingLowDegreeExpansion | MidDepthChain | MidDepthReduction | DeepSum
            | FullDepthEvenChain | FullDepthReduction => Relation::Eq,
            _ => Relation::Ge,
        }
    }

    fn applies_to(self, k: i128) -> bool {
        match self {
            Inequality::MidDepthOdd | Inequality::DeepOdd | Inequality::FullDepthOdd => k % 2 == 1,
            Inequality::FullDepthEven | Inequality::FullDepthEvenChain => k % 2 == 0,
            _ => true,
        }
    }

    /// Index values scanned at `(k, n)`; `None` for statements without one.
    fn indices(self, k: i128, n: i128) -> Vec<Option<i128>> {
        use Inequality::*;
        let range = |lo: i128, hi: i128| (lo..=hi).map(Some).collect();
        match self {
            PackingBudget | PackingLowDegreeExpansion => range(0, f_i128(k, n)),
            PackingHighDegreeResidual => range(1, f_i128(k, n)),
            MidDepth | MidDepthOdd | MidDepthChain | MidDepthReduction => range(2, n - 3 * k - 3),
            MidDepthThreshold => range(1, n - 3 * k - 3),
            Deep | DeepOdd | DeepSum => range(n - 3 * k - 2, n - 4),
            _ => vec![None],
        }
    }

    /// Both sides at one grid point.
    pub fn evaluate(self, k: u64, n: u64, index: Option<u64>) -> (Q, Q) {
        let (k, n) = (k as i128, n as i128);
        let x = index.map(|i| i as i128).unwrap_or(0);
        self.sides(k, n, x)
    }

    fn sides(self, k: i128, n: i128, x: i128) -> (Q, Q) {
        use Inequality::*;
        let q = Q::from_integer;
        let zero = q(0);
        let kp1sq = (k + 1) * (k + 1);
        let big_r = k * (n - 1) + 1;
        let r_prime = if k % 2 == 1 { c2(k) + 1 } else { k * (n - 1) / 2 + 1 };
        let exact_quotient = |m: i128| Q::new(k * m - 2 * k * k, kp1sq);
        match self {
            PackingBudget => {
                let t = x;
                let lhs = q(big_r * t + c2(t) + t * (k + 1)) + Q::new(t * (k + 1), 2) - q(t * (t + 1) * kp1sq);
                (lhs, zero)
            }
            PackingHighDegreeResidual => {
                let t = x;
                (q(big_r * t + c2(t) - (big_r + t - 1)), q(big_r * (t - 1) + c2(t - 1)))
            }
            PackingLowDegreeExpansion => {
                let t = x;
                let residual =
                    q(big_r * t + c2(t) + r_prime - t * (k + 1) * ((t + 1) * (k + 1) - 1)) + Q::new(t * (k + 1), 2);
                let budget = q(big_r * t + c2(t) + t * (k + 1)) + Q::new(t * (k + 1), 2) - q(t * (t + 1) * kp1sq);
                (residual, budget + q(r_prime))
            }
            SingleStepStarEdges => (q(k * (k * (n - 2) + 1 + (k + 1) / 2)), Q::new(k * k * (2 * n - 3) + 2 * k, 2)),
            SingleStepWideTotal => {
                (q(rstar(k, n - 1)) + Q::new(k * k * (2 * n - 3) + 2 * k, 2), q(rstar(k, n)))
            }
            SingleStepFloor => {
                let floor = q(f_i128(k, n) + k / 2 + 2) * q(n - k);
                (floor, (exact_quotient(n) + q(k / 2 + 1)) * q(n - k))
            }
            SingleStepGrowth => {
                ((exact_quotient(n) + q(k / 2 + 1)) * q(n - k), Q::new(k * k * (2 * n - 3) + k, 2))
            }
            SingleStepNarrowTotal => {
                (q(rstar(k, n - 1)) + Q::new(k * k * (2 * n - 3) + k, 2), q(rstar(k, n)))
            }
            MidDepth | MidDepthOdd => {
                let j = x;
                let lost = if self == MidDepth { k - 2 } else { k - 1 };
                let lhs = q(2 * k * n - k * j - 4 * k * k) - q(lost * kp1sq) * Q::new(j, j - 1);
                (lhs, zero)
            }
            MidDepthChain => {
                let j = x;
                let sum: Q = (1..j).map(|i| exact_quotient(n - i)).sum();
                let lhs = q(k) * sum + q(k * j) - Q::new(k * k * j, 2);
                let bracket = q(2 * k * n - k * j - 4 * k * k) - q((k - 2) * kp1sq) * Q::new(j, j - 1);
                (lhs, Q::new(k * (j - 1), 2 * kp1sq) * bracket)
            }
            MidDepthReduction => {
                let j = x;
                let layered = q(rstar(k, n - j) + k * k * j * (n - j - 1) + k * j) + Q::new(k * k * j * (j - 1), 2);
                let slack = if k % 2 == 0 { q(k * j) - Q::new(k * k * j, 2) } else { Q::new(k * j - k * k * j, 2) };
                (layered - q(rstar(k, n)), slack)
            }
            MidDepthThreshold => (q(f_i128(k, n - x)), q(1)),
            Deep | DeepOdd => {
                let j = x;
                let lost = if self == Deep { k - 2 } else { k - 1 };
                (q(k * (n - 3 * k - 3) * (n - k + 2) - kp1sq * lost * j), zero)
            }
            DeepSum => {
                let j = x;
                let sum: Q = (1..=n - 3 * k - 3).map(|i| exact_quotient(n - i)).sum();
                let lhs = q(k) * sum - Q::new((k * k - 2 * k) * j, 2);
                let rhs = Q::new(k * (k * (n - 3 * k - 3) * (n - k + 2) - kp1sq * (k - 2) * j), 2 * kp1sq);
                (lhs, rhs)
            }
            FullDepthEven => {
                let num = k * k * (n - 3 * k - 3) * (n - k + 2) + (7 * k * k - 2 * k + 2 * k * n) * kp1sq;
                (Q::new(num, kp1sq), q(k * k * n + 6 * k))
            }
            FullDepthEvenChain => {
                let lhs = q(2 * k) * surplus_bound(k, n) + q(k * k + 2 * k * n);
                let num = k * k * (n - 3 * k - 3) * (n - k + 2) + (7 * k * k - 2 * k + 2 * k * n) * kp1sq;
                (lhs, Q::new(num, kp1sq))
            }
            FullDepthOdd => (q(2 * k) * surplus_bound(k, n) + q(2 * k * k + k * n), q(k * k * n + 6 * k)),
            FullDepthReduction => {
                let layered = q(k * k + 2 * k * k * (n - 3) + k * (n - 3)) + Q::new(k * k * (n - 3) * (n - 4), 2);
                let lhs = q(2) * (layered - q(rstar(k, n)));
                let rhs = if k % 2 == 0 {
                    q(k * k + 2 * k * n - k * k * n - 6 * k)
                } else {
                    q(2 * k * k + k * n - k * k * n - 6 * k)
                };
                (lhs, rhs)
            }
        }
    }
}

fn c2(x: i128) -> i128 {
    x * (x - 1) / 2
}

fn f_i128(k: i128, n: i128) -> i128 {
    (k * n - 2 * k * k).div_euclid((k + 1) * (k + 1))
}

/// Restricted size Ramsey number for `n >= 2`, in `i128`.
fn rstar(k: i128, n: i128) -> i128 {
    let whole = c2(k * (n - 1) + 1);
    if k >= n || k % 2 == 1 {
        whole - c2(k)
    } else {
        whole - k * (n - 1) / 2
    }
}

/// `sum_{i=1}^{n-3k-3} (k(n-i)-2k^2)/(k+1)^2 + (3k-1)`.
fn surplus_bound(k: i128, n: i128) -> Q {
    let sum: Q = (1..=n - 3 * k - 3).map(|i| Q::new(k * (n - i) - 2 * k * k, (k + 1) * (k + 1))).sum();
    sum + Q::from_integer(3 * k - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum NStart {
    /// `k^3 + 2k^2 + 2k`, the large-`n` threshold.
    Threshold,
    Fixed(u64),
}

/// For each `k`, scan `n = start, start+1, ..., start+window-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NPolicy {
    pub start: NStart,
    pub window: u64,
}

impl Default for NPolicy {
    fn default() -> Self {
        NPolicy { start: NStart::Threshold, window: 50 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub k_min: u64,
    pub k_max: u64,
    pub n_policy: NPolicy,
    #[serde(skip)]
    pub exec: Exec,
}

impl Grid {
    pub fn new(k_min: u64, k_max: u64, n_policy: NPolicy) -> Self {
        Grid { k_min, k_max, n_policy, exec: Exec::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.k_min < 2 || self.k_min > self.k_max || self.n_policy.window == 0 {
            return Err(Error::Domain(format!(
                "empty grid: k in [{}, {}], window {}",
                self.k_min, self.k_max, self.n_policy.window
            )));
        }
        if self.k_max > AUDIT_MAX_K {
            return Err(Error::Ceiling { what: "audit k", ceiling: AUDIT_MAX_K as usize, got: self.k_max as usize });
        }
        if self.n_policy.window > AUDIT_MAX_WINDOW {
            return Err(Error::Ceiling {
                what: "audit window",
                ceiling: AUDIT_MAX_WINDOW as usize,
                got: self.n_policy.window as usize,
            });
        }
        if let NStart::Fixed(n) = self.n_policy.start {
            if n < 4 {
                return Err(Error::Domain(format!("audit needs n >= 4, got {n}")));
            }
        }
        Ok(())
    }

    /// `(k, n)` pairs in scan order.
    pub fn points(&self) -> Result<Vec<(u64, u64)>> {
        self.validate()?;
        let mut out = Vec::new();
        for k in self.k_min..=self.k_max {
            let start = match self.n_policy.start {
                NStart::Threshold => super::theorem3_threshold(k)?,
                NStart::Fixed(n) => n,
            };
            out.extend((start..start + self.n_policy.window).map(|n| (k, n)));
        }
        Ok(out)
    }
}

/// One failing grid point. `lhs` and `rhs` are exact rationals rendered as
/// `p` or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub k: u64,
    pub n: u64,
    pub index: Option<u64>,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    /// Re-evaluates the point; true iff it still fails.
    pub fn recheck(&self, inequality: Inequality) -> bool {
        let (lhs, rhs) = inequality.evaluate(self.k, self.n, self.index);
        !inequality.relation().holds(&lhs, &rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub inequality: Inequality,
    pub relation: Relation,
    pub grid: Grid,
    /// Grid points evaluated, counting every index value.
    pub points: u64,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits one statement over the grid.
pub fn audit_one(inequality: Inequality, grid: &Grid) -> Result<AuditReport> {
    let points = grid.points()?;
    let per_point = par::map(grid.exec, &points, |&(k, n)| {
        let (ki, ni) = (k as i128, n as i128);
        if !inequality.applies_to(ki) {
            return (0u64, Vec::new());
        }
        let mut count = 0;
        let mut bad = Vec::new();
        for idx in inequality.indices(ki, ni) {
            count += 1;
            let (lhs, rhs) = inequality.sides(ki, ni, idx.unwrap_or(0));
            if !inequality.relation().holds(&lhs, &rhs) {
                bad.push(Violation { k, n, index: idx.map(|i| i as u64), lhs: lhs.to_string(), rhs: rhs.to_string() });
            }
        }
        (count, bad)
    });
    let mut report =
        AuditReport { inequality, relation: inequality.relation(), grid: *grid, points: 0, violations: Vec::new() };
    for (count, bad) in per_point {
        report.points += count;
        report.violations.extend(bad);
    }
    Ok(report)
}

/// Audits every statement in [`Inequality::ALL`] order.
pub fn audit_inequalities(grid: &Grid) -> Result<Vec<AuditReport>> {
    Inequality::ALL.iter().map(|&i| audit_one(i, grid)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(k_min: u64, k_max: u64, start: NStart, window: u64) -> Grid {
        Grid::new(k_min, k_max, NPolicy { start, window })
    }

    #[test]
    fn mid_depth_for_k2_is_linear() {
        let grid = window(2, 2, NStart::Fixed(20), 51);
        let report = audit_one(Inequality::MidDepth, &grid).unwrap();
        assert!(report.is_clean());
        for n in 20..=70u64 {
            for j in 2..=n - 9 {
                let (lhs, _) = Inequality::MidDepth.evaluate(2, n, Some(j));
                assert_eq!(lhs, Q::from_integer(4 * n as i128 - 2 * j as i128 - 16));
            }
        }
    }

    #[test]
    fn packing_budget_small() {
        let grid = window(2, 2, NStart::Fixed(11), 1);
        let report = audit_one(Inequality::PackingBudget, &grid).unwrap();
        assert_eq!(report.points, 2);
        assert!(report.is_clean());
        let (lhs, _) = Inequality::PackingBudget.evaluate(2, 11, Some(1));
        assert_eq!(lhs, Q::new(15, 2));
    }

    #[test]
    fn default_window_is_clean() {
        let grid = window(2, 5, NStart::Threshold, 50);
        for report in audit_inequalities(&grid).unwrap() {
            assert!(report.is_clean(), "{} has violations: {:?}", report.inequality.id(), &report.violations[..1]);
            assert!(report.points > 0, "{} scanned nothing", report.inequality.id());
        }
    }

    #[test]
    fn small_n_violates() {
        let grid = window(5, 5, NStart::Fixed(30), 1);
        let report = audit_one(Inequality::MidDepth, &grid).unwrap();
        assert!(!report.is_clean());
        let first = &report.violations[0];
        assert_eq!((first.k, first.n, first.index), (5, 30, Some(2)));
        assert_eq!(first.lhs, "-26");
        assert!(report.violations.iter().all(|v| v.recheck(Inequality::MidDepth)));
    }

    #[test]
    fn grid_errors() {
        assert!(window(3, 2, NStart::Threshold, 5).points().is_err());
        assert!(window(2, 3, NStart::Threshold, 0).points().is_err());
        assert!(window(1, 3, NStart::Threshold, 5).points().is_err());
        assert!(window(2, 51, NStart::Threshold, 5).points().is_err());
    }

    #[test]
    fn ids_round_trip() {
        for i in Inequality::ALL {
            assert_eq!(Inequality::from_id(i.id()), Some(i));
        }
        assert_eq!(Inequality::from_id("nope"), None);
    }

    #[test]
    fn parity_restricted_statements_skip() {
        let grid = window(2, 2, NStart::Threshold, 3);
        assert_eq!(audit_one(Inequality::MidDepthOdd, &grid).unwrap().points, 0);
        assert_eq!(audit_one(Inequality::FullDepthEven, &grid).unwrap().points, 3);
    }

    #[test]
    fn modes_agree() {
        let mut grid = window(2, 4, NStart::Threshold, 10);
        let outcome = |g: &Grid| -> Vec<_> {
            audit_inequalities(g).unwrap().into_iter().map(|r| (r.inequality, r.points, r.violations)).collect()
        };
        let par = outcome(&grid);
        grid.exec = Exec::Sequential;
        assert_eq!(par, outcome(&grid));
    }

    #[test]
    fn report_json() {
        let grid = window(2, 2, NStart::Fixed(11), 1);
        let json = serde_json::to_value(audit_one(Inequality::PackingBudget, &grid).unwrap()).unwrap();
        assert_eq!(json["inequality"], "packing_budget");
        assert_eq!(json["grid"]["n_policy"]["start"]["kind"], "fixed");
        assert_eq!(json["violations"].as_array().unwrap().len(), 0);
    }
}
