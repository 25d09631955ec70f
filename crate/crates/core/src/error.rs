use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("frequencies {0} and {1} collide modulo the grid size {n}", n = .2)]
    AliasingCollision(String, String, usize),

    #[error("solver did not converge within {iterations} iterations (feasibility {feas}, gap {gap})")]
    NotConverged {
        iterations: usize,
        feas: f64,
        gap: f64,
    },

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("certificate is degenerate (a unimodular character); its deficit carries no support information")]
    DegenerateCertificate,

    #[error("admissibility bounds inconsistent: upper {upper} < lower {lower}")]
    InconsistentAdmissibility { lower: f64, upper: f64 },

    #[error("difference matrix is singular (rank {rank} < {dim})")]
    SingularLattice { rank: usize, dim: usize },

    #[error("window is not contiguous in the data: {0}")]
    NonContiguousWindow(String),

    #[error("data is not Hermitian-consistent on the window: {0}")]
    HermitianInconsistency(String),

    #[error("moment window does not extend to a positive-definite sequence")]
    NotExtendable,

    #[error("window extension inconsistent with full data: {0}")]
    WindowInconsistent(String),

    #[error("positive-definite extendability is only implemented for dimension 1 (got {0})")]
    UnsupportedDimension(usize),

    #[error("matrix is rank deficient; refusing to solve")]
    RankDeficient,

    #[error("support set inconsistent with data (residual {0})")]
    SupportInconsistent(f64),

    #[error("internal contradiction: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
