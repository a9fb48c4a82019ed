use thiserror::Error;

/// Failure modes shared across the crate. Domain errors mean the caller asked
/// for something outside an operation's contract; the numeric variants report
/// honest non-convergence instead of silently degraded results.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("insufficient data: need at least {required} values, got {got}")]
    InsufficientData { required: usize, got: usize },

    #[error("empty sample")]
    EmptySample,

    #[error(
        "quadrature did not converge on [{lo:.6e}, {hi:.6e}]: \
         error estimate {estimate:.3e} exceeds budget {budget:.3e} at depth cap {max_depth}"
    )]
    QuadratureNonConvergence {
        lo: f64,
        hi: f64,
        estimate: f64,
        budget: f64,
        max_depth: u32,
    },

    #[error(
        "density cache refinement stalled: achieved {achieved:.3e} against budget {budget:.3e} \
         at {nodes} nodes"
    )]
    CacheNonConvergence {
        achieved: f64,
        budget: f64,
        nodes: usize,
    },

    #[error("root search did not converge: {0}")]
    RootNonConvergence(String),

    #[error("combinatorial bound exceeded: {0}")]
    CombinatorialBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
