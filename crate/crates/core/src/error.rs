use thiserror::Error;

/// Errors raised by matrix construction, decomposition, and solver routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e} exceeds tolerance {tol:.3e})")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.17} instead of 1")]
    InvalidTrace { trace: f64 },

    #[error("state vector norm is {norm:.17} instead of 1")]
    NotNormalized { norm: f64 },

    #[error("Schatten exponent must satisfy p >= 1, got {p}")]
    InvalidExponent { p: f64 },

    #[error("exponents are not conjugate: 1/p + 1/q = {sum:.17}")]
    NotConjugate { sum: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {offdiag:.3e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },

    #[error("dimension {dim} exceeds the limit {max} for this routine")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("operator does not commute with the reference observable (residual {residual:.3e})")]
    NotInCommutant { residual: f64 },

    #[error("Hamiltonian spectrum is degenerate (minimum gap {gap:.3e})")]
    DegenerateHamiltonian { gap: f64 },

    #[error("a pure state is required for this relation")]
    PureStateRequired,

    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),

    #[error("numerical invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
