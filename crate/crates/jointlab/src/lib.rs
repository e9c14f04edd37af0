//! Exact combinatorics on dense simple graphs: Turán graphs, clique counting,
//! joints (cliques sharing a common edge), a peeling reduction that extracts a
//! dense core, and a stability dichotomy checker. Everything that ends in a
//! verdict is computed in exact integer/rational arithmetic; floating point
//! never decides anything.

pub mod bitset;
pub mod bounds;
pub mod clique;
pub mod exact;
pub mod experiments;
pub mod gen;
pub mod graph;
pub mod joint;
pub mod setsys;
pub mod stability;
pub mod turan;

pub use bitset::BitSet;
pub use bounds::{BoundInputs, BoundName, BoundReport, BoundValue, Regime};
pub use clique::CliqueSpectrum;
pub use graph::{Graph, PeelTrace};
pub use joint::{JointCertificate, LargeJoint, ReductionCase, ReductionOutcome};
pub use setsys::SetSystem;
pub use stability::{ColorOutcome, StabilityReport, StabilityVerdict};

/// Crate-wide error type. Variant names follow the operation contracts.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("vertex set does not induce a clique of the required order")]
    NotAClique,
    #[error("graph is the Turán graph T_{r}({n})")]
    IsTuranGraph { n: usize, r: usize },
    #[error("order {n} is not divisible by {r}")]
    IndivisibleOrder { n: usize, r: usize },
    #[error("unknown bound identifier `{0}`")]
    UnknownBound(String),
    #[error("bound `{bound}` requires input `{input}`")]
    MissingInput { bound: String, input: String },
    #[error("malformed edge list: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
