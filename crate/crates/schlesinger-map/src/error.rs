use elementary_divisor::DivisorError;
use fuchsian_core::CoreError;
use thiserror::Error;

use crate::hamiltonian::GeneratingReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchlesingerError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error("invalid transformation index: {0}")]
    InvalidIndex(String),
    #[error("index theta at pole {pole}, slot {slot} is not a simple eigenvalue")]
    MultipleEigenvalue { pole: usize, slot: usize },
    #[error("c_alpha^mu b_(beta,nu) = {0:e}: the transformation is undefined here")]
    DegeneratePairing(f64),
    #[error("index at pole {pole}, slot {slot} would become zero and change the rank")]
    RankChange { pole: usize, slot: usize },
    #[error("logarithm of a vanishing pairing for the term at pole {pole}, slot {slot}")]
    LogOfZeroPairing { pole: usize, slot: usize },
    #[error("generating equations fail: {0}")]
    GradientMismatch(Box<GeneratingReport>),
    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<SchlesingerError>,
    },
}
