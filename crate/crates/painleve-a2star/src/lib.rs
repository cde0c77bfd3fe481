//! Difference Painleve equation with A2* surface type, realized by 3x3 Fuchsian
//! systems with poles 0, 1 and spectral type 111,111,111.
//!
//! The chart (x, y) lives in the frame where b_{1,1}, b_{1,2}, b_{2,1} are the
//! standard basis and b_{2,2} = (1, 1, 1)^T; the remaining entries alpha, beta
//! of C_1 are fixed by the spectrum at infinity.

mod chart;
mod orbit;
mod standard;
mod step;

use fuchsian_core::{c64, CoreError, C64};
use schlesinger_map::SchlesingerError;
use thiserror::Error;

pub use chart::{build_a2_point, canonical_frame, coefficient_residuals, solve_alpha_beta, xy_coordinates, A2State};
pub use orbit::{a2_orbit, orbit_csv, A2Orbit, A2OrbitRow};
pub use standard::{a2_standard_step, to_standard, StandardA2Parameters};
pub use step::{
    a2_pipeline_step, a2_schlesinger_step, composite_stages, composite_step, schlesinger_index, sigma13,
    CompositeStage, COMPOSITE_INDICES,
};

pub const DENOMINATOR_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum A2Error {
    #[error("Fuchs relation violated: sum of exponents = {0:e}")]
    FuchsViolation(f64),
    #[error("non-generic parameters: {0}")]
    NonGeneric(&'static str),
    #[error("alpha, beta cannot be solved from the spectrum at infinity")]
    AlphaBetaUnsolvable,
    /// Kept for callers matching on root multiplicity; the matching equations
    /// are affine in (alpha, beta), so a unique solution or none is found.
    #[error("several (alpha, beta) solve the matching equations")]
    MultipleRoots(Vec<(C64, C64)>),
    #[error("spectrum at infinity misses (kappa1, kappa2, kappa3) by {0:e}")]
    InfinitySpectrumMismatch(f64),
    #[error("frame vectors are degenerate: {0}")]
    DegenerateFrame(&'static str),
    #[error("point is not in the canonical frame: {0}")]
    FrameMismatch(String),
    #[error("redundant entries of C_2 disagree by {0:e}")]
    InconsistentEntries(f64),
    #[error("indeterminacy: {0} vanishes")]
    Indeterminacy(&'static str),
    #[error("cross products at pole 0 are degenerate")]
    DegenerateCross,
    #[error("stage {stage}: {source}")]
    Stage { stage: usize, source: Box<A2Error> },
    #[error(transparent)]
    Schlesinger(#[from] SchlesingerError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2Parameters {
    pub theta11: C64,
    pub theta12: C64,
    pub theta21: C64,
    pub theta22: C64,
    pub kappa: [C64; 3],
}

impl A2Parameters {
    pub fn new(theta11: C64, theta12: C64, theta21: C64, theta22: C64, kappa: [C64; 3]) -> Result<Self, A2Error> {
        let p = A2Parameters {
            theta11,
            theta12,
            theta21,
            theta22,
            kappa,
        };
        let scale = 1.0
            + [theta11, theta12, theta21, theta22]
                .iter()
                .chain(&kappa)
                .map(|z| z.norm())
                .sum::<f64>();
        let sum = p.fuchs_sum().norm();
        if sum > 1e-9 * scale {
            return Err(A2Error::FuchsViolation(sum));
        }
        if (theta11 - theta12).norm() < DENOMINATOR_TOL {
            return Err(A2Error::NonGeneric("theta11 = theta12"));
        }
        if (theta21 - theta22).norm() < DENOMINATOR_TOL {
            return Err(A2Error::NonGeneric("theta21 = theta22"));
        }
        Ok(p)
    }

    /// kappa3 fixed by the Fuchs relation.
    pub fn from_free(
        theta11: C64,
        theta12: C64,
        theta21: C64,
        theta22: C64,
        kappa1: C64,
        kappa2: C64,
    ) -> Result<Self, A2Error> {
        let kappa3 = -(theta11 + theta12 + theta21 + theta22 + kappa1 + kappa2);
        Self::new(theta11, theta12, theta21, theta22, [kappa1, kappa2, kappa3])
    }

    pub fn fuchs_sum(&self) -> C64 {
        self.theta11 + self.theta12 + self.theta21 + self.theta22 + self.kappa.iter().sum::<C64>()
    }

    pub fn thetas(&self) -> Vec<Vec<C64>> {
        vec![vec![self.theta11, self.theta12], vec![self.theta21, self.theta22]]
    }

    /// (theta11, theta12, theta21, theta22, kappa1, kappa2, kappa3).
    pub fn to_array(&self) -> [C64; 7] {
        let [k1, k2, k3] = self.kappa;
        [self.theta11, self.theta12, self.theta21, self.theta22, k1, k2, k3]
    }

    /// The same kappa with new local exponents read from a decomposition point.
    fn with_thetas(&self, thetas: &[Vec<C64>]) -> Self {
        A2Parameters {
            theta11: thetas[0][0],
            theta12: thetas[0][1],
            theta21: thetas[1][0],
            theta22: thetas[1][1],
            kappa: self.kappa,
        }
    }
}

pub fn poles() -> Vec<C64> {
    vec![c64(0.0, 0.0), c64(1.0, 0.0)]
}

fn nonzero(value: C64, scale: f64, name: &'static str) -> Result<C64, A2Error> {
    if !(value.norm() > DENOMINATOR_TOL * scale.max(1.0)) || !value.is_finite() {
        return Err(A2Error::Indeterminacy(name));
    }
    Ok(value)
}
