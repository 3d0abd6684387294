//! Edge-colored graph combinatorics.
//!
//! The crate builds the extremal colorings that avoid vertex-disjoint
//! rainbow triangles, evaluates the color thresholds that force rainbow
//! structures, and provides exact searchers, the color-saturation calculus,
//! a constructive peeling extractor for `m` disjoint rainbow triangles in
//! complete hosts, and a verification harness over enumerated or sampled
//! colorings.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod rainbow;
pub mod saturation;
pub mod verify;

pub use bounds::{anti_ramsey_rb, turan_edges, BoundFormula, BoundId, Threshold};
pub use error::{Error, Result};
pub use graph::{ColorId, ColoredGraph, Vertex};
pub use rainbow::{CliquePack, TrianglePack};
