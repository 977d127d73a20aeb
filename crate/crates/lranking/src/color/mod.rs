//! Constructive ℓ-ranking algorithms: paths, pathwidth peeling, guard sets,
//! skeletons, the simple-treewidth recursion, and product composition.

mod guard;
mod path;
mod pathwidth;
mod product;
mod skeleton;
mod ttree;

pub use guard::{guard_set, guard_size_bound, GuardSet, GuardTag};
pub use path::{rank_path, rank_path_expected_colors, rank_path_vertices};
pub use pathwidth::rank_pathwidth;
pub use product::{
    distance_colour_clique_path, rank_certificate, rank_product, DistanceColoring,
    ProductCertificate,
};
pub use skeleton::{build_skeleton, rank_via_skeleton, Skeleton};
pub use ttree::{rank_simple_ttree, BandKind, BandRecord, TtreeRanking};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("graph is not edge-maximal for the decomposition: missing edge ({0},{1})")]
    NotEdgeMaximal(usize, usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition is not {0}-simple")]
    NotSimple(usize),
    #[error("internal verification failed; witness path {witness:?}")]
    VerificationFailed { witness: Vec<usize> },
    #[error("skeleton colors collide with the low band (need all > {band})")]
    BandCollision { band: u32 },
    #[error("color bands overflowed with a = {a}")]
    BandOverflow { a: u64 },
    #[error("rankings disagree on ℓ: {0} vs {1}")]
    MismatchedEll(usize, usize),
    #[error("certificate does not cover target edge ({0},{1})")]
    InvalidCertificate(usize, usize),
    #[error("numerics: {0}")]
    Numerics(#[from] crate::numerics::NumericsError),
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
}
