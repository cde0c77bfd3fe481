use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("system has no poles")]
    EmptySystem,
    #[error("poles {0} and {1} coincide")]
    DuplicatePoles(usize, usize),
    #[error("residue {0} is not a square matrix of the common size")]
    NonSquareResidue(usize),
    #[error("residue at pole {0} is not diagonalizable")]
    NotDiagonalizable(usize),
    #[error("eigen-decomposition failed at pole {0}")]
    EigenFailure(usize),
    #[error("evaluation at pole {0}")]
    EvaluationAtPole(usize),
    #[error("Fuchs relation violated: sum of indices = {0:e}")]
    FuchsViolation(f64),
    #[error("declared spectrum does not match residue at pole {0}")]
    RankMismatch(usize),
    #[error("sum of B_i C_i does not match -A_inf (residual {0:e})")]
    InfinityMismatch(f64),
    #[error("normalization C_i B_i = Theta_i fails at pole {pole} (residual {residual:e})")]
    NormalizationMismatch { pole: usize, residual: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("need at least two poles")]
    SinglePole,
    #[error("pole index {0} out of range")]
    PoleOutOfRange(usize),
    #[error("malformed system data: {0}")]
    Malformed(String),
}
