//! Arc-disjoint arborescence packings of digraphs.
//!
//! A spanning arborescence of a digraph is a rooted spanning tree with all
//! arcs directed away from the root. This crate computes
//!
//! * `lambda` — the largest `L` such that for every `l <= L` the in-degree
//!   profile satisfies `sum_{i<l} (l-i)*Y_i <= l`, where `Y_i` counts vertices
//!   of in-degree `i`. This is a cheap upper bound for the packing number.
//! * `tau` — the maximum number of pairwise arc-disjoint spanning
//!   arborescences, certified either exactly through subpartition enumeration
//!   ([`frank`]) or constructively through flow-checked packing ([`pack`]).
//! * Degree statistics of the random digraph `D(n,p)` ([`random`], [`stats`])
//!   and seeded Monte Carlo sweeps comparing `tau` against `lambda` across
//!   density regimes ([`experiment`]).
//!
//! The two `tau` routes are deliberately independent of each other: the
//! enumeration side never runs a flow, the packing side never enumerates a
//! subpartition, and agreement between them is part of the test suite.

pub mod digraph;
pub mod experiment;
pub mod frank;
pub mod lambda;
pub mod numeric;
pub mod pack;
pub mod random;
pub mod stats;

/// Concrete scalar used by the binary and the experiment layer; the analytic
/// functions in [`stats`] are generic over [`numeric::Real`] instead.
pub type Scalar = f64;

pub use digraph::{Arborescence, Digraph, Direction, Packing, VertexSet};
pub use lambda::LambdaResult;
pub use pack::{EffortBudget, PackOutcome};
pub use random::{Regime, Seed};
