use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building polytopes, fields, codes and bounds.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionCap { dim: usize, max: usize },

    #[error(
        "polytope spans an affine subspace of dimension {affine_dim} inside Z^{dim}; \
         drop redundant coordinates so it becomes full-dimensional"
    )]
    NotFullDimensional { dim: usize, affine_dim: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("halfspace system defines an empty region")]
    EmptyRegion,

    #[error("halfspace system defines an unbounded region")]
    UnboundedRegion,

    #[error("axis {axis} out of range for dimension {dim} (axes are 1-based)")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("guard `{guard}` exceeded: requested {requested}, limit {limit}")]
    GuardExceeded { guard: &'static str, requested: u128, limit: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded { .. } | Error::DimensionCap { .. } => 3,
            Error::Io { .. } => 4,
            Error::Internal(_) => 5,
            _ => 2,
        }
    }
}
