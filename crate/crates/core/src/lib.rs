//! Exact computations for size Ramsey numbers of stars versus cliques.
//!
//! - [`graph`]: dense graphs on up to 64 vertices, graph6 and edge-list I/O,
//!   canonical forms and isomorphism-class enumeration.
//! - [`arrowing`]: decides `F → (K_{1,k}, K_n)` with certificates, plus a
//!   brute-force oracle.
//! - [`formulas`]: closed forms and an exact-rational auditor for the
//!   inequalities in the lower-bound argument.
//! - [`lemmas`]: executable constructions (min-degree subsets, packings,
//!   good colourings, peeling) with verifiers.
//! - [`extremal`]: extremal candidates and exact `r̂` / `r̂*` by exhaustion.

pub mod arrowing;
pub mod error;
pub mod extremal;
pub mod formulas;
pub mod graph;
pub mod lemmas;
pub mod par;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use par::Exec;
