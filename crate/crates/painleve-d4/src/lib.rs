//! Difference Painleve V as an elementary Schlesinger step {1 t; 1 1} of a
//! 2x2 Fuchsian system with poles 0, 1, t and A_inf = diag(kappa1, kappa2).
//!
//! Poles are stored in the order [0, 1, t]. Each residue has rank one,
//! A_i = a_i (1, beta_i - w)^T (gamma_i + w, 1), and the whole point is fixed
//! by (p, q) = (a_1 beta_t / t, -t a_t / a_1) up to the gauge scale a_1.

mod orbit;
mod standard;

use fuchsian_core::decomposition::PoleFactors;
use fuchsian_core::linalg::max_abs;
use fuchsian_core::{c64, continuous_hamiltonian, CMat, CoreError, DecompositionPoint, C64};
use schlesinger_map::{transform_decomposition, SchlesingerError, TransformationIndex};
use thiserror::Error;

pub use orbit::{dpv_orbit, orbit_csv, DpvOrbit, DpvOrbitRow};
pub use standard::{dpv_standard_step, to_standard, StandardDpvParameters};

/// Relative size below which a denominator counts as vanishing.
pub const DENOMINATOR_TOL: f64 = 1e-13;
/// Pole index of t in the stored order [0, 1, t].
pub const POLE_T: usize = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DpvError {
    #[error("Fuchs relation violated: theta0 + theta1 + thetat + kappa1 + kappa2 = {0:e}")]
    FuchsViolation(f64),
    #[error("t must differ from 0 and 1")]
    BadT,
    #[error("singular parameterization: {0} vanishes")]
    SingularParameterization(&'static str),
    #[error("point is not in the normalized frame: {0}")]
    FrameMismatch(String),
    #[error("indeterminacy: {0} vanishes")]
    Indeterminacy(&'static str),
    #[error("p = 0 has no standard-form image")]
    ZeroP,
    #[error(transparent)]
    Schlesinger(#[from] SchlesingerError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpvParameters {
    pub theta0: C64,
    pub theta1: C64,
    pub thetat: C64,
    pub kappa1: C64,
    pub kappa2: C64,
    pub t: C64,
}

impl DpvParameters {
    pub fn new(theta0: C64, theta1: C64, thetat: C64, kappa1: C64, kappa2: C64, t: C64) -> Result<Self, DpvError> {
        let p = DpvParameters {
            theta0,
            theta1,
            thetat,
            kappa1,
            kappa2,
            t,
        };
        let sum = p.fuchs_sum().norm();
        if sum > 1e-9 * (1.0 + theta0.norm() + theta1.norm() + thetat.norm() + kappa1.norm() + kappa2.norm()) {
            return Err(DpvError::FuchsViolation(sum));
        }
        check_t(t)?;
        Ok(p)
    }

    /// theta0 fixed by the Fuchs relation.
    pub fn from_free(theta1: C64, thetat: C64, kappa1: C64, kappa2: C64, t: C64) -> Result<Self, DpvError> {
        Self::new(-(theta1 + thetat + kappa1 + kappa2), theta1, thetat, kappa1, kappa2, t)
    }

    pub fn fuchs_sum(&self) -> C64 {
        self.theta0 + self.theta1 + self.thetat + self.kappa1 + self.kappa2
    }

    /// Parameters after {1 t; 1 1}: theta1 - 1, thetat + 1.
    pub fn shifted(&self) -> Self {
        DpvParameters {
            theta1: self.theta1 - 1.0,
            thetat: self.thetat + 1.0,
            ..*self
        }
    }

    pub fn poles(&self) -> Vec<C64> {
        vec![c64(0.0, 0.0), c64(1.0, 0.0), self.t]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpvState {
    pub p: C64,
    pub q: C64,
}

fn check_t(t: C64) -> Result<(), DpvError> {
    if t.norm() < DENOMINATOR_TOL || (t - 1.0).norm() < DENOMINATOR_TOL {
        return Err(DpvError::BadT);
    }
    Ok(())
}

fn nonzero(value: C64, scale: f64, name: &'static str) -> Result<C64, DpvError> {
    if !(value.norm() > DENOMINATOR_TOL * scale.max(1.0)) || !value.is_finite() {
        return Err(DpvError::Indeterminacy(name));
    }
    Ok(value)
}

/// The step {1 t; 1 1} in the pole order [0, 1, t].
pub fn dpv_index() -> TransformationIndex {
    TransformationIndex::new(1, POLE_T, 0, 0)
}

/// The quantities a_i, beta_i, gamma_i, w of the rank-one parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpvChart {
    pub a: [C64; 3],
    pub beta: [C64; 3],
    pub gamma: [C64; 3],
    pub w: C64,
}

pub fn dpv_chart(params: &DpvParameters, state: &DpvState, a1_gauge: C64) -> Result<DpvChart, DpvError> {
    let DpvParameters {
        theta0,
        theta1,
        thetat,
        kappa1,
        kappa2,
        t,
    } = *params;
    let DpvState { p, q } = *state;
    check_t(t)?;
    if a1_gauge.norm() < DENOMINATOR_TOL {
        return Err(DpvError::SingularParameterization("a1"));
    }
    if p.norm() < DENOMINATOR_TOL {
        return Err(DpvError::SingularParameterization("p"));
    }
    let a1 = a1_gauge;
    let at = -q * a1 / t;
    if at.norm() < DENOMINATOR_TOL * a1.norm() {
        return Err(DpvError::SingularParameterization("a_t"));
    }
    let a0 = -a1 - at;
    if a0.norm() < DENOMINATOR_TOL * a1.norm() {
        return Err(DpvError::SingularParameterization("a_0"));
    }
    if (kappa1 - kappa2).norm() < DENOMINATOR_TOL {
        return Err(DpvError::SingularParameterization("kappa1 - kappa2"));
    }
    let pq = p * q;
    let beta = [c64(0.0, 0.0), (pq - kappa2) / a1, t * p / a1];
    let gamma = [theta0 / a0, (theta1 + kappa2 - pq) / a1, (thetat + pq) / at];
    let a = [a0, a1, at];
    // off-diagonal (2,1) entry of A_inf vanishes
    let w = -(a1 * beta[1] * gamma[1] + at * beta[2] * gamma[2]) / (kappa1 - kappa2);
    Ok(DpvChart { a, beta, gamma, w })
}

/// Decomposition point with b_i = (1, beta_i - w)^T, c_i = a_i (gamma_i + w, 1).
pub fn build_dpv_point(
    params: &DpvParameters,
    state: &DpvState,
    a1_gauge: C64,
) -> Result<DecompositionPoint, DpvError> {
    let ch = dpv_chart(params, state, a1_gauge)?;
    let thetas = [params.theta0, params.theta1, params.thetat];
    let factors = (0..3)
        .map(|i| PoleFactors {
            b: CMat::from_column_slice(2, 1, &[c64(1.0, 0.0), ch.beta[i] - ch.w]),
            c: CMat::from_row_slice(1, 2, &[ch.a[i] * (ch.gamma[i] + ch.w), ch.a[i]]),
            theta: vec![thetas[i]],
        })
        .collect();
    let a_inf = CMat::from_row_slice(2, 2, &[params.kappa1, c64(0.0, 0.0), c64(0.0, 0.0), params.kappa2]);
    Ok(DecompositionPoint {
        poles: params.poles(),
        factors,
        a_inf,
    })
}

/// Reads (p, q) back from the residues. Requires A_inf = diag(kappa1, kappa2)
/// in that order; a diagonal conjugation of the point leaves (p, q) unchanged.
pub fn pq_coordinates(point: &DecompositionPoint, params: &DpvParameters) -> Result<DpvState, DpvError> {
    if point.matrix_size() != 2 || point.n_poles() != 3 {
        return Err(DpvError::FrameMismatch("expected a 2x2 system with three poles".into()));
    }
    let res = point.residues();
    let a_inf = -res.iter().fold(CMat::zeros(2, 2), |acc, a| acc + a);
    // A_inf is a cancelling sum of residues, so rounding scales with them
    let scale = 1.0 + res.iter().map(max_abs).fold(0.0, f64::max);
    let target = CMat::from_row_slice(2, 2, &[params.kappa1, c64(0.0, 0.0), c64(0.0, 0.0), params.kappa2]);
    let err = max_abs(&(&a_inf - target));
    if err > 1e-8 * scale {
        return Err(DpvError::FrameMismatch(format!(
            "A_inf differs from diag(kappa1, kappa2) by {err:.3e}"
        )));
    }
    let a: Vec<C64> = res.iter().map(|r| r[(0, 1)]).collect();
    if a.iter().any(|x| x.norm() < DENOMINATOR_TOL) {
        return Err(DpvError::FrameMismatch("vanishing (1,2) entry of a residue".into()));
    }
    let w = -res[0][(1, 1)] / a[0];
    let beta_t = res[POLE_T][(1, 1)] / a[POLE_T] + w;
    let t = params.t;
    Ok(DpvState {
        p: a[1] * beta_t / t,
        q: -t * a[POLE_T] / a[1],
    })
}

/// Closed-form step: pq + PQ - kappa2 = t(thetat + kappa1)/(q - t - c) - (theta1 - 1 + kappa1)/(q - 1 - c)
/// with c = (theta1 + kappa2)/p, then (theta1 + kappa2 - pq) Q (kappa2 - PQ) = t p (thetat + 1 + PQ).
pub fn dpv_step(params: &DpvParameters, state: &DpvState) -> Result<(DpvParameters, DpvState), DpvError> {
    let DpvParameters {
        theta1,
        thetat,
        kappa1,
        kappa2,
        t,
        ..
    } = *params;
    let DpvState { p, q } = *state;
    let scale = 1.0 + p.norm() + q.norm() + t.norm();
    let p = nonzero(p, scale, "p")?;
    let c = (theta1 + kappa2) / p;
    let d_t = nonzero(q - t - c, scale + c.norm(), "q - t - (theta1 + kappa2)/p")?;
    let d_1 = nonzero(q - 1.0 - c, scale + c.norm(), "q - 1 - (theta1 + kappa2)/p")?;
    let next = params.shifted();
    let pq_bar = kappa2 - p * q + t * (thetat + kappa1) / d_t - (next.theta1 + kappa1) / d_1;
    let lhs = nonzero(theta1 + kappa2 - p * q, scale, "theta1 + kappa2 - pq")?
        * nonzero(kappa2 - pq_bar, scale + pq_bar.norm(), "kappa2 - pbar qbar")?;
    let q_bar = nonzero(t * p * (next.thetat + pq_bar) / lhs, scale, "qbar")?;
    Ok((
        next,
        DpvState {
            p: pq_bar / q_bar,
            q: q_bar,
        },
    ))
}

/// The same step through the decomposition space: build, apply {1 t; 1 1},
/// read (p, q) back. Independent of the closed form.
pub fn dpv_pipeline_step(
    params: &DpvParameters,
    state: &DpvState,
    a1_gauge: C64,
) -> Result<(DpvParameters, DpvState), DpvError> {
    let point = build_dpv_point(params, state, a1_gauge)?;
    let (barred, _) = transform_decomposition(&point, &dpv_index())?;
    let next = params.shifted();
    Ok((next, pq_coordinates(&barred, &next)?))
}

/// H_VI = H_t + pq/t with
/// t H_t = (thetat + pq)(theta0 + p(q - t)) + (theta1 + kappa2 - p(q - t))(t thetat + kappa2 q - pq(q - t))/(t - 1).
pub fn hamiltonian_pvi(params: &DpvParameters, state: &DpvState) -> Result<C64, DpvError> {
    let DpvParameters {
        theta0,
        theta1,
        thetat,
        kappa2,
        t,
        ..
    } = *params;
    check_t(t)?;
    let DpvState { p, q } = *state;
    let pq = p * q;
    let h_t = (thetat + pq) * (theta0 + p * (q - t)) / t
        + (theta1 + kappa2 - p * (q - t)) * (t * thetat + kappa2 * q - pq * (q - t)) / (t * (t - 1.0));
    Ok(h_t + pq / t)
}

/// sum_{i != t} tr(A_t A_i)/(t - u_i) + pq/t, from the matrices of the point.
pub fn hamiltonian_from_point(
    point: &DecompositionPoint,
    params: &DpvParameters,
    state: &DpvState,
) -> Result<C64, DpvError> {
    Ok(continuous_hamiltonian(point, POLE_T)? + state.p * state.q / params.t)
}
