//! Exhaustive oracle: try all `2^e` colourings.
//!
//! Shares nothing with the search engine beyond the colouring check; it is
//! the reference the engine is tested against.

use super::{check_params, check_rows};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Exec};

/// Largest edge count the oracle accepts.
pub const ORACLE_EDGE_LIMIT: usize = 20;

pub fn brute_force_arrows(f: &Graph, k: usize, n: usize) -> Result<bool> {
    brute_force_arrows_with(f, k, n, Exec::default())
}

/// True iff none of the `2^e(f)` colourings is good.
pub fn brute_force_arrows_with(f: &Graph, k: usize, n: usize, exec: Exec) -> Result<bool> {
    check_params(k, n)?;
    let edges = f.edges();
    if edges.len() > ORACLE_EDGE_LIMIT {
        return Err(Error::Ceiling { what: "oracle edge count", ceiling: ORACLE_EDGE_LIMIT, got: edges.len() });
    }
    let order = f.order();
    let colourings = 1u64 << edges.len();
    // Split the mask space into blocks so each task reuses its buffers.
    let block_bits = edges.len().saturating_sub(10);
    let blocks = 1u64 << block_bits;
    let per_block = colourings / blocks;
    let good_exists = par::any_in_range(exec, blocks, |b| {
        let mut red = vec![0u64; order];
        let mut blue = vec![0u64; order];
        (b * per_block..(b + 1) * per_block).any(|mask| {
            red.iter_mut().for_each(|r| *r = 0);
            blue.iter_mut().for_each(|r| *r = 0);
            for (i, &(u, v)) in edges.iter().enumerate() {
                let rows = if mask >> i & 1 == 1 { &mut red } else { &mut blue };
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            check_rows(&red, &blue, k, n).is_good()
        })
    });
    Ok(!good_exists)
}
