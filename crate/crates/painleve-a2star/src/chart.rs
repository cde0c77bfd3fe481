use fuchsian_core::decomposition::PoleFactors;
use fuchsian_core::linalg::{column, det, dominant_index, eigenvalues, inverse, max_abs, trace, ONE, ZERO};
use fuchsian_core::{CMat, DecompositionPoint, C64};

use crate::{poles, A2Error, A2Parameters};

/// Residual bound for the two matched coefficients of the characteristic polynomial.
pub const MATCH_TOL: f64 = 1e-9;
/// Relative bound for the redundant entries of C_2 and for the frame check.
pub const FRAME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2State {
    pub x: C64,
    pub y: C64,
    pub alpha: C64,
    pub beta: C64,
}

impl A2State {
    pub fn new(params: &A2Parameters, x: C64, y: C64) -> Result<Self, A2Error> {
        let (alpha, beta) = solve_alpha_beta(params, x, y)?;
        Ok(A2State { x, y, alpha, beta })
    }

    /// Re-checks the cached alpha, beta against the spectrum at infinity.
    pub fn revalidate(&self, params: &A2Parameters) -> Result<(), A2Error> {
        let r = coefficient_residuals(params, self.x, self.y, self.alpha, self.beta);
        if r[0].norm().max(r[1].norm()) > MATCH_TOL * scale(params, self.x, self.y) {
            return Err(A2Error::AlphaBetaUnsolvable);
        }
        Ok(())
    }
}

fn scale(params: &A2Parameters, x: C64, y: C64) -> f64 {
    let s = 1.0 + x.norm() + y.norm() + params.to_array().iter().map(|z| z.norm()).sum::<f64>();
    s * s * s
}

/// B_1 C_1 + B_2 C_2 = -A_inf in the chart.
fn minus_a_inf(params: &A2Parameters, x: C64, y: C64, alpha: C64, beta: C64) -> CMat {
    let A2Parameters {
        theta11,
        theta12,
        theta21,
        theta22,
        ..
    } = *params;
    CMat::from_row_slice(
        3,
        3,
        &[
            theta11 - y,
            y + theta22,
            alpha,
            -y,
            theta12 + y + theta22,
            beta,
            x - theta21 - y,
            y + theta22 - x,
            theta21,
        ],
    )
}

/// (e2(M) - e2(kappa), det M + e3(kappa)) for M = -A_inf, whose eigenvalues are -kappa_j.
pub fn coefficient_residuals(params: &A2Parameters, x: C64, y: C64, alpha: C64, beta: C64) -> [C64; 2] {
    let m = minus_a_inf(params, x, y, alpha, beta);
    let [k1, k2, k3] = params.kappa;
    let tr = trace(&m);
    let e2 = (tr * tr - trace(&(&m * &m))) / 2.0;
    [e2 - (k1 * k2 + k1 * k3 + k2 * k3), det(&m) + k1 * k2 * k3]
}

/// alpha and beta fill one column of -A_inf, so both matched coefficients are
/// affine in (alpha, beta): recover the affine map from three evaluations and solve.
pub fn solve_alpha_beta(params: &A2Parameters, x: C64, y: C64) -> Result<(C64, C64), A2Error> {
    let f0 = coefficient_residuals(params, x, y, ZERO, ZERO);
    let fa = coefficient_residuals(params, x, y, ONE, ZERO);
    let fb = coefficient_residuals(params, x, y, ZERO, ONE);
    let (j11, j12, j21, j22) = (fa[0] - f0[0], fb[0] - f0[0], fa[1] - f0[1], fb[1] - f0[1]);
    let d = j11 * j22 - j12 * j21;
    let jscale = j11.norm().max(j12.norm()).max(j21.norm()).max(j22.norm());
    if !(d.norm() > 1e-13 * jscale * jscale) {
        return Err(A2Error::AlphaBetaUnsolvable);
    }
    let alpha = (-f0[0] * j22 + f0[1] * j12) / d;
    let beta = (-f0[1] * j11 + f0[0] * j21) / d;
    let r = coefficient_residuals(params, x, y, alpha, beta);
    if !(r[0].norm().max(r[1].norm()) <= MATCH_TOL * scale(params, x, y)) {
        return Err(A2Error::AlphaBetaUnsolvable);
    }
    Ok((alpha, beta))
}

/// Largest distance from kappa_j to its nearest unused eigenvalue of A_inf.
fn spectrum_mismatch(a_inf: &CMat, kappa: &[C64; 3]) -> Result<f64, A2Error> {
    let mut eig = eigenvalues(a_inf).ok_or(A2Error::InfinitySpectrumMismatch(f64::INFINITY))?;
    let mut worst: f64 = 0.0;
    for k in kappa {
        let (i, d) = eig
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (e - k).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        worst = worst.max(d);
        eig.swap_remove(i);
    }
    Ok(worst)
}

pub fn build_a2_point(params: &A2Parameters, x: C64, y: C64) -> Result<DecompositionPoint, A2Error> {
    let A2Parameters {
        theta11,
        theta12,
        theta21,
        theta22,
        kappa,
    } = *params;
    let (alpha, beta) = solve_alpha_beta(params, x, y)?;
    let b1 = CMat::from_row_slice(3, 2, &[ONE, ZERO, ZERO, ONE, ZERO, ZERO]);
    let c1 = CMat::from_row_slice(2, 3, &[theta11, ZERO, alpha, ZERO, theta12, beta]);
    let b2 = CMat::from_row_slice(3, 2, &[ZERO, ONE, ZERO, ONE, ONE, ONE]);
    let c2 = CMat::from_row_slice(2, 3, &[x - theta21, -x, theta21, -y, y + theta22, ZERO]);
    let a_inf = -minus_a_inf(params, x, y, alpha, beta);
    let mismatch = spectrum_mismatch(&a_inf, &kappa)?;
    let tol = 1e-9 * (1.0 + max_abs(&a_inf));
    if mismatch > tol {
        return Err(A2Error::InfinitySpectrumMismatch(mismatch));
    }
    Ok(DecompositionPoint {
        poles: poles(),
        factors: vec![
            PoleFactors {
                b: b1,
                c: c1,
                theta: vec![theta11, theta12],
            },
            PoleFactors {
                b: b2,
                c: c2,
                theta: vec![theta21, theta22],
            },
        ],
        a_inf,
    })
}

fn check_shape(point: &DecompositionPoint) -> Result<(), A2Error> {
    if point.matrix_size() != 3 || point.n_poles() != 2 || point.factors.iter().any(|f| f.rank() != 2) {
        return Err(A2Error::FrameMismatch(
            "expected a 3x3 system with two rank-two residues".into(),
        ));
    }
    Ok(())
}

/// Similarity sending b_{1,1}, b_{1,2}, b_{2,1} to e_1, e_2, e_3, then a
/// diagonal gauge making b_{2,2} = (1, 1, 1)^T; columns are rescaled so each
/// b vector equals its basis vector exactly.
pub fn canonical_frame(point: &DecompositionPoint) -> Result<DecompositionPoint, A2Error> {
    check_shape(point)?;
    let (b1, b2) = (&point.factors[0].b, &point.factors[1].b);
    let basis = CMat::from_columns(&[b1.column(0), b1.column(1), b2.column(0)]);
    let s = inverse(&basis).ok_or(A2Error::DegenerateFrame("b11, b12, b21 are dependent"))?;
    let v = &s * column(b2, 1);
    let vmax = max_abs(&v);
    if v.iter().any(|z| !(z.norm() > 1e-12 * vmax)) {
        return Err(A2Error::DegenerateFrame("b22 has a vanishing component"));
    }
    let t = CMat::from_diagonal(&v.map(|z| ONE / z)) * s;
    let t_inv = inverse(&t).ok_or(A2Error::DegenerateFrame("singular frame change"))?;
    let factors = point
        .factors
        .iter()
        .map(|f| {
            let mut b = &t * &f.b;
            let mut c = &f.c * &t_inv;
            for j in 0..f.rank() {
                let col: Vec<C64> = b.column(j).iter().copied().collect();
                let k = col[dominant_index(&col)];
                b.column_mut(j).iter_mut().for_each(|z| *z /= k);
                c.row_mut(j).iter_mut().for_each(|z| *z *= k);
            }
            PoleFactors {
                b,
                c,
                theta: f.theta.clone(),
            }
        })
        .collect();
    Ok(DecompositionPoint {
        poles: point.poles.clone(),
        factors,
        a_inf: &t * &point.a_inf * &t_inv,
    })
}

/// x = (C_2)_{11} + theta21, y = -(C_2)_{21}, with the other entries of C_2
/// checked against (x - theta21, -x, theta21; -y, y + theta22, 0).
pub fn xy_coordinates(point: &DecompositionPoint) -> Result<(C64, C64), A2Error> {
    check_shape(point)?;
    let expected_b = [
        CMat::from_row_slice(3, 2, &[ONE, ZERO, ZERO, ONE, ZERO, ZERO]),
        CMat::from_row_slice(3, 2, &[ZERO, ONE, ZERO, ONE, ONE, ONE]),
    ];
    for (f, e) in point.factors.iter().zip(&expected_b) {
        let err = max_abs(&(&f.b - e));
        if err > FRAME_TOL {
            return Err(A2Error::FrameMismatch(format!(
                "B differs from the canonical frame by {err:.3e}"
            )));
        }
    }
    let c2 = &point.factors[1].c;
    let (theta21, theta22) = (point.factors[1].theta[0], point.factors[1].theta[1]);
    let x = c2[(0, 0)] + theta21;
    let y = -c2[(1, 0)];
    let scale = 1.0 + max_abs(c2);
    let err = [
        c2[(0, 1)] + x,
        c2[(0, 2)] - theta21,
        c2[(1, 1)] - y - theta22,
        c2[(1, 2)],
    ]
    .iter()
    .fold(0.0f64, |m, z| m.max(z.norm()));
    if err > FRAME_TOL * scale {
        return Err(A2Error::InconsistentEntries(err));
    }
    Ok((x, y))
}
