use elementary_divisor::DivisorError;
use fuchsian_core::CoreError;
use painleve_a2star::A2Error;
use painleve_d4::DpvError;
use picard_lattice::LatticeError;
use schlesinger_map::SchlesingerError;

/// Failure classes of a command, one per nonzero exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, unreadable or inconsistent config.
    Usage(String),
    /// A check or a numerical consistency test failed.
    Failed(String),
    /// The data sit on a locus where a map is undefined; the message names it.
    Indeterminacy(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Indeterminacy(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Indeterminacy(m) => m,
        }
    }

    pub(crate) fn prefixed(self, prefix: String) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{prefix}: {m}")),
            CliError::Failed(m) => CliError::Failed(format!("{prefix}: {m}")),
            CliError::Indeterminacy(m) => CliError::Indeterminacy(format!("{prefix}: {m}")),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self {
            CliError::Usage(_) => "usage error",
            CliError::Failed(_) => "check failed",
            CliError::Indeterminacy(_) => "indeterminacy",
        };
        write!(f, "{kind}: {}", self.message())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::EvaluationAtPole(_) => CliError::Indeterminacy(e.to_string()),
            CoreError::InfinityMismatch(_) | CoreError::NormalizationMismatch { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DivisorError> for CliError {
    fn from(e: DivisorError) -> Self {
        CliError::Indeterminacy(e.to_string())
    }
}

impl From<SchlesingerError> for CliError {
    fn from(e: SchlesingerError) -> Self {
        match e {
            SchlesingerError::Core(c) => c.into(),
            SchlesingerError::Divisor(d) => d.into(),
            SchlesingerError::Step { step, source } => CliError::from(*source).prefixed(format!("step {step}")),
            SchlesingerError::DegeneratePairing(_)
            | SchlesingerError::RankChange { .. }
            | SchlesingerError::LogOfZeroPairing { .. } => CliError::Indeterminacy(e.to_string()),
            SchlesingerError::InvalidIndex(_) | SchlesingerError::MultipleEigenvalue { .. } => {
                CliError::Usage(e.to_string())
            }
            SchlesingerError::GradientMismatch(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<DpvError> for CliError {
    fn from(e: DpvError) -> Self {
        match e {
            DpvError::Schlesinger(s) => s.into(),
            DpvError::Core(c) => c.into(),
            DpvError::Indeterminacy(name) => CliError::Indeterminacy(name.to_string()),
            DpvError::SingularParameterization(_) | DpvError::ZeroP => CliError::Indeterminacy(e.to_string()),
            DpvError::FuchsViolation(_) | DpvError::BadT => CliError::Usage(e.to_string()),
            DpvError::FrameMismatch(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<A2Error> for CliError {
    fn from(e: A2Error) -> Self {
        match e {
            A2Error::Schlesinger(s) => s.into(),
            A2Error::Core(c) => c.into(),
            A2Error::Stage { stage, source } => CliError::from(*source).prefixed(format!("stage {stage}")),
            A2Error::Indeterminacy(name) => CliError::Indeterminacy(name.to_string()),
            A2Error::DegenerateCross | A2Error::DegenerateFrame(_) | A2Error::AlphaBetaUnsolvable => {
                CliError::Indeterminacy(e.to_string())
            }
            A2Error::FuchsViolation(_) | A2Error::NonGeneric(_) => CliError::Usage(e.to_string()),
            A2Error::InfinitySpectrumMismatch(_)
            | A2Error::FrameMismatch(_)
            | A2Error::InconsistentEntries(_)
            | A2Error::MultipleRoots(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Failed(e.to_string())
    }
}
