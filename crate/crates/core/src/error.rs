use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not skew-Hermitian (deviation {0:.3e})")]
    NotSkewHermitian(f64),
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not special unitary (|det - 1| = {0:.3e})")]
    NotSpecial(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("eigenphase {0} lies on the branch cut at -pi")]
    BranchAmbiguous(f64),
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("element lies outside the basis span (residual {0:.3e})")]
    OutsideSpan(f64),
    #[error("eigenvalue pairing failed: {0}")]
    Pairing(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("root computation inconsistent: {0}")]
    Roots(String),
    #[error("iteration does not contract at delta = {delta}: ratio {ratio:.3}")]
    NonContraction { delta: f64, ratio: f64 },
    #[error("degenerate Cartan point at t = {t}: minimum root value {min_root:.3e}")]
    Degenerate { t: f64, min_root: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
