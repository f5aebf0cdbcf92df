//! Graphs embedded on surfaces, represented by rotation systems with edge
//! signatures.
//!
//! The crate provides:
//!
//! * validated combinatorial embeddings with facial-walk tracing and Euler
//!   genus ([`embed`]),
//! * curve classification, face-width and non-separating face-width with
//!   certificates ([`curves`]),
//! * surface surgery: cutting along cycles and face-chains, edge
//!   contraction/deletion and ΔY/YΔ transformations ([`surgery`]),
//! * minor testing with independently checkable branch-set certificates
//!   ([`minors`]),
//! * enumeration of ΔY/YΔ classes up to isomorphism ([`dyclass`]),
//! * disjoint-path linkages and the cylinder-grid K₆ builder ([`linkage`]).
//!
//! All values are immutable; operations return fresh values.

pub mod canon;
pub mod curves;
pub mod dyclass;
pub mod emb_io;
pub mod embed;
pub mod fixtures;
pub mod graph;
pub mod linkage;
pub mod minors;
pub mod planarity;
pub mod radial;
pub mod suites;
pub mod surgery;

/// Errors produced by embedding validation, surgery and search operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cycle is not simple")]
    NonSimpleCycle,
    #[error("curve classification mismatch: expected {expected}, computed {computed}")]
    ClassificationMismatch { expected: String, computed: String },
    #[error("face chain is not closed")]
    ChainNotClosed,
    #[error("face chain cannot be realized: {0}")]
    ChainNotRealizable(String),
    #[error("chain ends are not on the base chain")]
    ChainEndsNotOnChain,
    #[error("chain is not minimal in its class")]
    ChainNotMinimal,
    #[error("layer index {k} exceeds bound {bound}")]
    LayerBoundExceeded { k: usize, bound: usize },
    #[error("width too small: {0}")]
    WidthTooSmall(String),
    #[error("paths are not internally disjoint")]
    PathsNotDisjoint,
    #[error("not a triangle")]
    NotATriangle,
    #[error("triangle is not facial")]
    TriangleNotFacial,
    #[error("vertex does not have degree 3")]
    NotDegreeThree,
    #[error("wye neighbors are adjacent; transformation would create a parallel edge")]
    WyeNeighborsAdjacent,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {0} not on cycle")]
    NotOnCycle(usize),
    #[error("invalid transformation record: {0}")]
    BadTransformation(String),
    #[error("restricted minor search exhausted on a theorem instance: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
