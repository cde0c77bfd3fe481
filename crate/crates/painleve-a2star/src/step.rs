use fuchsian_core::decomposition::PoleFactors;
use fuchsian_core::linalg::{column, identity, max_abs, normalize_dominant, row};
use fuchsian_core::{CMat, CRow, CVec, DecompositionPoint, C64};
use schlesinger_map::{transform_decomposition, TransformationIndex};

use crate::chart::{build_a2_point, canonical_frame, solve_alpha_beta, xy_coordinates};
use crate::{nonzero, A2Error, A2Parameters};

/// {1 2; 1 1}: lower theta11 by one, raise theta21 by one.
pub fn schlesinger_index() -> TransformationIndex {
    TransformationIndex::new(0, 1, 0, 0)
}

/// Closed form of {1 2; 1 1} in the chart.
pub fn a2_schlesinger_step(params: &A2Parameters, x: C64, y: C64) -> Result<(A2Parameters, C64, C64), A2Error> {
    let A2Parameters {
        theta11,
        theta12,
        theta21,
        theta22,
        ..
    } = *params;
    let (alpha, beta) = solve_alpha_beta(params, x, y)?;
    let scale = 1.0 + x.norm() + y.norm() + alpha.norm() + beta.norm();
    let den = nonzero(theta11 - theta12 - 1.0, 1.0, "theta11 - theta12 - 1")?;
    let alpha = nonzero(alpha, scale, "alpha")?;
    let d = nonzero(
        (alpha - beta) * (y + theta22) - alpha * (theta21 + 1.0),
        scale * scale,
        "(alpha - beta)(y + theta22) - alpha(theta21 + 1)",
    )?;
    let x_bar = (alpha - beta) * (theta11 * (y + theta22) - alpha * (x - y - theta22)) / (alpha * den);
    let y_bar = ((alpha - beta) * y - beta * theta22) / den
        * (1.0 + theta11 / alpha + ((beta - alpha) * x + (theta12 + 1.0 + alpha) * (theta21 + 1.0)) / d);
    let next = A2Parameters {
        theta11: theta11 - 1.0,
        theta21: theta21 + 1.0,
        ..*params
    };
    Ok((next, x_bar, y_bar))
}

/// The same step through the decomposition space.
pub fn a2_pipeline_step(params: &A2Parameters, x: C64, y: C64) -> Result<(A2Parameters, C64, C64), A2Error> {
    if (params.theta11 - params.theta12 - 1.0).norm() < crate::DENOMINATOR_TOL {
        return Err(A2Error::Indeterminacy("theta11 - theta12 - 1"));
    }
    let point = build_a2_point(params, x, y)?;
    let (barred, _) = transform_decomposition(&point, &schlesinger_index())?;
    let framed = canonical_frame(&barred)?;
    let (x_bar, y_bar) = xy_coordinates(&framed)?;
    Ok((params.with_thetas(&framed.thetas()), x_bar, y_bar))
}

fn cross(a: &[C64], b: &[C64]) -> [C64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Exchange of the first and the kernel eigenvector at pole 0 followed by the
/// scalar gauge A(x) -> x^{-theta11} A(x): A_1 -> A_1 - theta11 I, A_2 fixed,
/// exponents at 0 become (-theta11, theta12 - theta11) and kappa_j -> kappa_j + theta11.
pub fn sigma13(
    point: &DecompositionPoint,
    params: &A2Parameters,
) -> Result<(DecompositionPoint, A2Parameters), A2Error> {
    let f = &point.factors[0];
    if point.matrix_size() != 3 || f.rank() != 2 {
        return Err(A2Error::FrameMismatch(
            "sigma13 needs a rank-two residue at pole 0 of a 3x3 system".into(),
        ));
    }
    let (theta11, theta12) = (f.theta[0], f.theta[1]);
    let b11: Vec<C64> = column(&f.b, 0).iter().copied().collect();
    let b12: Vec<C64> = column(&f.b, 1).iter().copied().collect();
    let c11: Vec<C64> = row(&f.c, 0).iter().copied().collect();
    let c12: Vec<C64> = row(&f.c, 1).iter().copied().collect();
    let bb = cross(&b11, &b12);
    let cc = cross(&c11, &c12);
    let pairing: C64 = bb.iter().zip(&cc).map(|(a, b)| a * b).sum();
    let size = max_abs(&bb) * max_abs(&cc);
    if !(pairing.norm() > 1e-12 * size) || size == 0.0 || theta12.norm() < crate::DENOMINATOR_TOL {
        return Err(A2Error::DegenerateCross);
    }
    let mut new_b = CVec::from_row_slice(&cc);
    let k = normalize_dominant(&mut new_b);
    let new_c = CRow::from_row_slice(&bb) * (-theta11 * k / pairing);
    let new_c2 = row(&f.c, 1) * ((theta12 - theta11) / theta12);
    let mut factors = point.factors.clone();
    factors[0] = PoleFactors {
        b: CMat::from_columns(&[new_b, column(&f.b, 1)]),
        c: CMat::from_rows(&[new_c, new_c2]),
        theta: vec![-theta11, theta12 - theta11],
    };
    let a_inf = &point.a_inf + identity(3) * theta11;
    let mut next = params.with_thetas(&[factors[0].theta.clone(), factors[1].theta.clone()]);
    next.kappa = params.kappa.map(|k| k + theta11);
    Ok((
        DecompositionPoint {
            poles: point.poles.clone(),
            factors,
            a_inf,
        },
        next,
    ))
}

/// Stages of the composite, applied left to right: {2 1; 1 1}, sigma13, {2 1; 2 1}, sigma13.
pub const COMPOSITE_INDICES: [Option<(usize, usize, usize, usize)>; 4] =
    [Some((1, 0, 0, 0)), None, Some((1, 0, 1, 0)), None];

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeStage {
    pub name: &'static str,
    pub point: DecompositionPoint,
    pub params: A2Parameters,
}

/// Runs the four stages and returns every intermediate point and scheme.
pub fn composite_stages(params: &A2Parameters, x: C64, y: C64) -> Result<Vec<CompositeStage>, A2Error> {
    let mut point = build_a2_point(params, x, y)?;
    let mut params = *params;
    let mut out = Vec::with_capacity(4);
    for (stage, idx) in COMPOSITE_INDICES.iter().enumerate() {
        let tag = |e: A2Error| A2Error::Stage {
            stage: stage + 1,
            source: Box::new(e),
        };
        let name = match idx {
            Some((a, b, m, n)) => {
                let idx = TransformationIndex::new(*a, *b, *m, *n);
                point = transform_decomposition(&point, &idx).map_err(|e| tag(e.into()))?.0;
                params = params.with_thetas(&point.thetas());
                if m == &0 {
                    "{2 1; 1 1}"
                } else {
                    "{2 1; 2 1}"
                }
            }
            None => {
                (point, params) = sigma13(&point, &params).map_err(tag)?;
                "sigma13"
            }
        };
        out.push(CompositeStage {
            name,
            point: point.clone(),
            params,
        });
    }
    Ok(out)
}

/// sigma13 . {2 1; 2 1} . sigma13 . {2 1; 1 1}, read back in the chart.
pub fn composite_step(params: &A2Parameters, x: C64, y: C64) -> Result<(A2Parameters, C64, C64), A2Error> {
    let stages = composite_stages(params, x, y)?;
    let last = stages.last().expect("four stages");
    let framed = canonical_frame(&last.point).map_err(|e| A2Error::Stage {
        stage: 5,
        source: Box::new(e),
    })?;
    let (x_bar, y_bar) = xy_coordinates(&framed).map_err(|e| A2Error::Stage {
        stage: 5,
        source: Box::new(e),
    })?;
    Ok((last.params, x_bar, y_bar))
}
