use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("duplicate id {0:?}")]
    DuplicateId(String),

    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },

    #[error("graph is disconnected: vertex {vertex:?} is unreachable from {root:?}")]
    DisconnectedGraph { root: String, vertex: String },

    #[error("edge {edge:?} has non-positive length {length}")]
    NonPositiveLength { edge: String, length: String },

    #[error("polarized graph has genus 0")]
    GenusZero,

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("offset {offset} out of range on edge {edge:?} of length {length}")]
    OffsetOutOfRange {
        edge: String,
        offset: String,
        length: String,
    },

    #[error("profile sample mismatch on edge {edge:?}: {detail}")]
    ProfileSampleMismatch { edge: String, detail: String },

    #[error("crosscheck failure for {quantity}: {primary} != {secondary}")]
    CrosscheckFailure {
        quantity: String,
        primary: String,
        secondary: String,
    },

    #[error("inconsistent node-type counts: {0}")]
    InconsistentCounts(String),

    #[error("genus mismatch: graph has h = {graph}, counts have h = {counts}")]
    GenusMismatch { graph: u64, counts: u64 },

    #[error("length mismatch: graph has total length {graph}, counts sum to {counts}")]
    LengthMismatch { graph: String, counts: String },

    #[error("type {tag} takes {expected} lengths, got {got}")]
    ArityMismatch {
        tag: String,
        expected: usize,
        got: usize,
    },

    #[error("rank deficient system: kernel dimension {kernel_dim}")]
    RankDeficient { kernel_dim: usize },

    #[error("validation failure: {0}")]
    ValidationFailure(String),

    #[error("denominator vanishes at the evaluation point")]
    DenominatorZero,
}
