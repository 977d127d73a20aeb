//! Vertex ℓ-rankings of graphs: verification, exact solving, constructive
//! colorers for paths / pathwidth / simple treewidth / graph products, and
//! lower-bound gadget generators.
//!
//! An ℓ-ranking is a coloring `φ: V(G) → {1, 2, ...}` such that every
//! non-trivial path of length at most ℓ either has differently colored
//! endpoints or contains an interior color strictly larger than the common
//! endpoint color. ℓ = 1 is proper coloring; ℓ = ∞ is classical vertex
//! ranking.

pub mod color;
pub mod decomposition;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod numerics;
pub mod verify;

pub mod cli;

pub use graph::{Graph, Layering, ProductVertex, StrongProduct};
pub use decomposition::{
    DecompositionReport, PathDecomposition, RootedTreeDecomposition, VertexWeights,
};
pub use verify::{Ranking, Violation};
