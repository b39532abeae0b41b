use crate::geom::Violation;
use crate::oracle::GammaViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0} lives in {1}D, {2} lives in {3}D")]
    DimensionMismatch(&'static str, u8, &'static str, u8),

    #[error("{outer} cannot contain {inner}")]
    IllegalContainment {
        outer: &'static str,
        inner: &'static str,
    },

    #[error("invalid representation ({} violation(s)): {}", .0.len(), join(.0))]
    InvalidRepresentation(Vec<Violation>),

    #[error(
        "oracle limit: search needs {side} vertices per side with k={k}, \
         configured caps are {max_side} per side and k <= {max_k}"
    )]
    OracleLimit {
        side: usize,
        k: usize,
        max_side: usize,
        max_k: usize,
    },

    #[error("segments share y={0} without strictly nested x-intervals")]
    Tie(i64),

    #[error("ordering is not gamma-free: {0:?}")]
    NotGammaFree(GammaViolation),

    #[error("no gamma-free ordering found (refinement failed above the exhaustive cap)")]
    OrderingNotFound,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("orientation mismatch: {0}")]
    Orientation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
