use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is below the minimum of 2")]
    DimensionTooSmall(usize),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("zero vector at index {0}")]
    ZeroVector(usize),

    #[error("empty vector set")]
    Empty,

    #[error("{found} generators cannot describe a body in dimension {dim}")]
    TooFewGenerators { dim: usize, found: usize },

    #[error("points do not span R^{dim} (numerical rank {rank})")]
    RankDeficient { dim: usize, rank: usize },

    #[error("shape matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("shape matrix is not positive definite (eigenvalue ratio {0:e})")]
    NotPositiveDefinite(f64),

    #[error("matrix is singular or too ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),

    #[error(
        "{n} vectors exceed the sign-enumeration cap of {cap}; \
         use denominator_mc_lower for a lower bound"
    )]
    SignCapExceeded { n: usize, cap: usize },

    #[error("MVEE did not converge within {iterations} iterations (achieved gap {gap:e})")]
    NotConverged { iterations: usize, gap: f64 },

    #[error("membership test is indeterminate: {0}")]
    Indeterminate(&'static str),

    #[error("operation requires a V-polytope body")]
    NotPolytope,

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("ratio {ratio} exceeds the bound {bound} in dimension {dim}; replay seed {seed}")]
    BoundViolated {
        dim: usize,
        ratio: f64,
        bound: f64,
        seed: u64,
    },
}
