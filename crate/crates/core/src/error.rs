use thiserror::Error;

/// Errors raised by the library.
///
/// Computed negative answers (an infeasible certificate, a violated
/// majorization) are never errors; they are reported as verdicts. These
/// variants cover malformed inputs, violated preconditions and numerical
/// breakdown.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e} exceeds {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    SolverFailure { sweeps: usize, residual: f64 },

    #[error("matrix is singular or too ill-conditioned to invert (pivot {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("condition {condition} violated: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPositive {
        condition: &'static str,
        min_eigenvalue: f64,
    },

    #[error("condition {condition} violated: {detail}")]
    ConditionFailed {
        condition: &'static str,
        detail: String,
    },

    #[error("entry ({row}, {col}) has modulus {modulus:.3e}, below the zero threshold")]
    ZeroEntry { row: usize, col: usize, modulus: f64 },

    #[error("state set is linearly dependent (minimum Gram eigenvalue {min_eigenvalue:.3e}); construction requires independent initial states")]
    LinearlyDependent { min_eigenvalue: f64 },

    #[error("state {index} is not normalized (norm {norm:.12})")]
    NotNormalized { index: usize, norm: f64 },

    #[error("operator {index} is not unitary (defect {defect:.3e})")]
    NotUnitary { index: usize, defect: f64 },

    #[error("operation is not trace-preserving (completeness defect {defect:.3e})")]
    NotTracePreserving { defect: f64 },

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("unknown outcome label `{0}`")]
    UnknownOutcome(String),

    #[error("outcome has probability {probability:.3e}; cannot condition on a null event")]
    NullOutcome { probability: f64 },

    #[error("majorization fails at prefix {prefix}")]
    NotMajorized { prefix: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for numerical breakdown as opposed to bad input or a violated precondition.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::SolverFailure { .. } | Error::Singular { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
