use std::fmt;

use fuchsian_core::linalg::cluster_values;
use fuchsian_core::C64;

use crate::error::SchlesingerError;

/// {alpha beta; mu nu}: lowers theta_alpha^mu by one and raises theta_beta^nu by one.
/// Pole indices and slots are 0-based here; `from_one_based` converts the
/// conventional labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformationIndex {
    pub alpha: usize,
    pub beta: usize,
    pub mu: usize,
    pub nu: usize,
}

impl TransformationIndex {
    pub fn new(alpha: usize, beta: usize, mu: usize, nu: usize) -> Self {
        TransformationIndex { alpha, beta, mu, nu }
    }

    pub fn from_one_based(alpha: usize, beta: usize, mu: usize, nu: usize) -> Result<Self, SchlesingerError> {
        if alpha == 0 || beta == 0 || mu == 0 || nu == 0 {
            return Err(SchlesingerError::InvalidIndex("one-based labels start at 1".into()));
        }
        Ok(Self::new(alpha - 1, beta - 1, mu - 1, nu - 1))
    }

    /// {beta alpha; nu mu}, which undoes this transformation.
    pub fn reverse(self) -> Self {
        Self::new(self.beta, self.alpha, self.nu, self.mu)
    }

    /// Checks pole and slot bounds against per-pole labels, and that both
    /// moving indices are simple.
    pub fn validate(&self, labels: &[Vec<C64>], cluster_tol: f64) -> Result<(), SchlesingerError> {
        let n = labels.len();
        if self.alpha == self.beta {
            return Err(SchlesingerError::InvalidIndex("alpha and beta coincide".into()));
        }
        if self.alpha >= n || self.beta >= n {
            return Err(SchlesingerError::InvalidIndex(format!(
                "pole index out of range for {n} poles"
            )));
        }
        for (pole, slot) in [(self.alpha, self.mu), (self.beta, self.nu)] {
            if slot >= labels[pole].len() {
                return Err(SchlesingerError::InvalidIndex(format!(
                    "slot {slot} out of range at pole {pole} (rank {})",
                    labels[pole].len()
                )));
            }
            let theta = labels[pole][slot];
            let repeated = cluster_values(&labels[pole], cluster_tol)
                .iter()
                .any(|c| c.multiplicity > 1 && (c.value - theta).norm() < cluster_tol);
            if repeated {
                return Err(SchlesingerError::MultipleEigenvalue { pole, slot });
            }
        }
        Ok(())
    }

    /// Labels after the step: slot positions are kept, only the two moving indices shift.
    pub fn shifted_labels(&self, labels: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let mut out = labels.to_vec();
        out[self.alpha][self.mu] -= 1.0;
        out[self.beta][self.nu] += 1.0;
        out
    }
}

impl fmt::Display for TransformationIndex {
    /// One-based, as conventionally written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{} {}; {} {}}}",
            self.alpha + 1,
            self.beta + 1,
            self.mu + 1,
            self.nu + 1
        )
    }
}
