//! Executable constructions with verifiers: min-degree subsets, packings,
//! the induced good colourings, and peeling.

mod dichotomy;
mod packing;
mod peel;

pub use dichotomy::{mindeg_or_matching, oracle_mindeg_subset, DichotomyKind, DichotomyResult, ORACLE_ORDER_LIMIT};
pub use packing::{disjoint_packing, good_colouring, Packing};
pub use peel::{peel_cascade, peel_t, peel_within, Peel, PeelLayer, EXHAUSTIVE_PEEL_ORDER};

use crate::error::{Error, Result};
use crate::graph::{clique_in_rows, Graph, VertexSet};

/// Vertices lying in no `K_n`. Empty for every edge-minimal arrowing graph.
pub fn redundant_vertices(g: &Graph, n: usize) -> Result<VertexSet> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    Ok(g.vertices().iter().filter(|&v| clique_in_rows(g.rows(), g.neighbours(v).bits(), n - 1).is_none()).collect())
}
