//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid node: {0}")]
    BadNode(String),

    #[error("invalid segment: {0}")]
    BadSegment(String),

    #[error("[{start}, {end}] is not a segment: start must be an ancestor of end")]
    NotASegment { start: String, end: String },

    #[error("segments {a} and {b} share a node")]
    OverlappingSegments { a: String, b: String },

    #[error("invalid space descriptor {0:?}")]
    BadDescriptor(String),

    #[error("dimension mismatch: space expects {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector has no norming functional")]
    ZeroVector,

    #[error("molecule weights have squared sum {0}, which exceeds one")]
    MoleculeWeights(f64),

    #[error("operation unsupported on {space}: {reason}")]
    Unsupported { space: String, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("covering violated: sample at dual distance {distance} from the nearest center (radius {radius})")]
    CoveringViolation { distance: f64, radius: f64 },

    #[error("certificate bound {bound} is not below two")]
    BoundNotBelowTwo { bound: f64 },

    #[error("validation found {violations} sample(s) beyond the certified bound {bound} (worst {worst})")]
    BoundViolation {
        violations: usize,
        bound: f64,
        worst: f64,
    },

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}
