use elementary_divisor::ElementaryDivisor;
use fuchsian_core::decomposition::PoleFactors;
use fuchsian_core::linalg::{
    column, dot, identity, left_inverse, left_null_space, max_abs, normalize_dominant, right_inverse, right_null_space,
    row,
};
use fuchsian_core::{
    build_system_with, decompose_ordered, default_labels, eval_coefficient, CMat, CRow, CVec, DecompositionPoint,
    FuchsianSystem, Tolerances, C64,
};

use crate::error::SchlesingerError;
use crate::index::TransformationIndex;

/// Relative size of c_alpha^mu b_(beta,nu) below which the step is treated
/// as undefined.
pub const PAIRING_REL_TOL: f64 = 1e-12;

fn multiplier(
    poles: &[C64],
    idx: &TransformationIndex,
    f: CVec,
    g: CRow,
) -> Result<ElementaryDivisor, SchlesingerError> {
    let gf = dot(&g, &f);
    if gf.norm() <= PAIRING_REL_TOL * f.norm() * g.norm() {
        return Err(SchlesingerError::DegeneratePairing(gf.norm()));
    }
    Ok(ElementaryDivisor::new(poles[idx.alpha], poles[idx.beta], f, g)?)
}

/// R(x) built from the un-barred data alone: f = b_(beta,nu), g = c_alpha^mu.
pub fn forward_multiplier(
    point: &DecompositionPoint,
    idx: &TransformationIndex,
) -> Result<ElementaryDivisor, SchlesingerError> {
    idx.validate(&point.thetas(), Tolerances::default().cluster)?;
    let f = column(&point.factors[idx.beta].b, idx.nu);
    let g = row(&point.factors[idx.alpha].c, idx.mu);
    multiplier(&point.poles, idx, f, g)
}

/// R(x) with f = b_(beta,nu) from the un-barred point and g = cbar_beta^nu from the barred one.
pub fn elementary_multiplier(
    point: &DecompositionPoint,
    barred: &DecompositionPoint,
    idx: &TransformationIndex,
) -> Result<ElementaryDivisor, SchlesingerError> {
    idx.validate(&point.thetas(), Tolerances::default().cluster)?;
    let f = column(&point.factors[idx.beta].b, idx.nu);
    let g = row(&barred.factors[idx.beta].c, idx.nu);
    multiplier(&point.poles, idx, f, g)
}

/// New residues from Abar(x) R(x) = R(x) A(x) + R'(x). Away from alpha and beta
/// this is conjugation by R(u_i); at alpha and beta the residue equation is
/// solved through P = f g / (g f).
fn transformed_residues(
    poles: &[C64],
    residues: &[CMat],
    idx: &TransformationIndex,
    theta_alpha: C64,
    theta_beta: C64,
    r: &ElementaryDivisor,
) -> Result<Vec<CMat>, SchlesingerError> {
    let m = residues[0].nrows();
    let eye = identity(m);
    let p = r.projector();
    let q = &eye - &p;
    let (ua, ub) = (poles[idx.alpha], poles[idx.beta]);
    let d = ua - ub;
    let regular = |at: usize| {
        (0..poles.len())
            .filter(|&k| k != at)
            .fold(CMat::zeros(m, m), |acc, k| acc + &residues[k] / (poles[at] - poles[k]))
    };
    let mut out = Vec::with_capacity(poles.len());
    for (i, a) in residues.iter().enumerate() {
        let next = if i == idx.alpha {
            a * &q + &p * theta_alpha + &p * regular(i) * &q * d - &p
        } else if i == idx.beta {
            &q * a + &p * theta_beta - &q * regular(i) * &p * d + &p
        } else {
            r.eval(poles[i])? * a * r.eval_inverse(poles[i])?
        };
        out.push(next);
    }
    Ok(out)
}

/// One step on a system whose slots follow `labels` (nonzero indices per pole).
/// Returns the new system, its labels in the same slot order, and R(x).
pub fn transform_system_labelled(
    system: &FuchsianSystem,
    labels: &[Vec<C64>],
    idx: &TransformationIndex,
    tol: &Tolerances,
) -> Result<(FuchsianSystem, Vec<Vec<C64>>, ElementaryDivisor), SchlesingerError> {
    idx.validate(labels, tol.cluster)?;
    check_rank_preserved(labels, idx, tol)?;
    let point = decompose_ordered(system, labels, tol)?;
    let r = forward_multiplier(&point, idx)?;
    let residues = transformed_residues(
        system.poles(),
        system.residues(),
        idx,
        labels[idx.alpha][idx.mu],
        labels[idx.beta][idx.nu],
        &r,
    )?;
    let next = build_system_with(system.poles().to_vec(), residues, tol)?;
    Ok((next, idx.shifted_labels(labels), r))
}

/// One step with slots in the default (sorted) order of `system`.
pub fn transform_system(
    system: &FuchsianSystem,
    idx: &TransformationIndex,
) -> Result<(FuchsianSystem, ElementaryDivisor), SchlesingerError> {
    let tol = Tolerances::default();
    let labels = default_labels(system, tol.cluster)?;
    let (next, _, r) = transform_system_labelled(system, &labels, idx, &tol)?;
    Ok((next, r))
}

fn check_rank_preserved(
    labels: &[Vec<C64>],
    idx: &TransformationIndex,
    tol: &Tolerances,
) -> Result<(), SchlesingerError> {
    if (labels[idx.alpha][idx.mu] - 1.0).norm() < tol.cluster {
        return Err(SchlesingerError::RankChange {
            pole: idx.alpha,
            slot: idx.mu,
        });
    }
    if (labels[idx.beta][idx.nu] + 1.0).norm() < tol.cluster {
        return Err(SchlesingerError::RankChange {
            pole: idx.beta,
            slot: idx.nu,
        });
    }
    Ok(())
}

/// Lift of one step to the decomposition space. Generic slots are carried by
/// R(u_i) with unit proportionality constants; the two moving slots are
/// recomputed from the new residues and normalized like `decompose`.
pub fn transform_decomposition(
    point: &DecompositionPoint,
    idx: &TransformationIndex,
) -> Result<(DecompositionPoint, ElementaryDivisor), SchlesingerError> {
    let tol = Tolerances::default();
    let labels = point.thetas();
    idx.validate(&labels, tol.cluster)?;
    check_rank_preserved(&labels, idx, &tol)?;
    let r = forward_multiplier(point, idx)?;
    let residues = point.residues();
    let theta_a = labels[idx.alpha][idx.mu];
    let theta_b = labels[idx.beta][idx.nu];
    let new_res = transformed_residues(&point.poles, &residues, idx, theta_a, theta_b, &r)?;
    let new_labels = idx.shifted_labels(&labels);
    let m = point.matrix_size();
    let q = identity(m) - r.projector();

    let mut factors = Vec::with_capacity(point.n_poles());
    for (i, f) in point.factors.iter().enumerate() {
        let theta = new_labels[i].clone();
        let next = if i == idx.beta {
            let target = new_res[i].clone() - identity(m) * theta[idx.nu];
            let mut fresh = column(&right_null_space(&target, 1), 0);
            normalize_dominant(&mut fresh);
            let mut b = &q * &f.b;
            b.set_column(idx.nu, &fresh);
            let c = left_inverse(&b).ok_or(SchlesingerError::DegeneratePairing(0.0))? * &new_res[i];
            PoleFactors { b, c, theta }
        } else if i == idx.alpha {
            let target = new_res[i].clone() - identity(m) * theta[idx.mu];
            let fresh = left_null_space(&target, 1);
            let mut c = &f.c * &q;
            c.set_row(idx.mu, &fresh.row(0));
            let mut b = &new_res[i] * right_inverse(&c).ok_or(SchlesingerError::DegeneratePairing(0.0))?;
            let mut col = column(&b, idx.mu);
            let s = normalize_dominant(&mut col);
            b.set_column(idx.mu, &col);
            let scaled = c.row(idx.mu) * s;
            c.set_row(idx.mu, &scaled);
            PoleFactors { b, c, theta }
        } else {
            let u = point.poles[i];
            PoleFactors {
                b: r.eval(u)? * &f.b,
                c: &f.c * r.eval_inverse(u)?,
                theta,
            }
        };
        factors.push(next);
    }
    let barred = DecompositionPoint {
        poles: point.poles.clone(),
        factors,
        a_inf: point.a_inf.clone(),
    };
    Ok((barred, r))
}

/// Largest relative violation of cbar_alpha^j b_(beta,nu) = 0 and
/// cbar_beta^nu b_(alpha,j) = 0 over j != mu.
pub fn orthogonality_residual(
    point: &DecompositionPoint,
    barred: &DecompositionPoint,
    idx: &TransformationIndex,
) -> f64 {
    let b_bn = column(&point.factors[idx.beta].b, idx.nu);
    let cb_bn = row(&barred.factors[idx.beta].c, idx.nu);
    let rank = point.factors[idx.alpha].rank();
    (0..rank)
        .filter(|&j| j != idx.mu)
        .map(|j| {
            let cb_aj = row(&barred.factors[idx.alpha].c, j);
            let b_aj = column(&point.factors[idx.alpha].b, j);
            let first = dot(&cb_aj, &b_bn).norm() / (cb_aj.norm() * b_bn.norm());
            let second = dot(&cb_bn, &b_aj).norm() / (cb_bn.norm() * b_aj.norm());
            first.max(second)
        })
        .fold(0.0, f64::max)
}

/// max_x |Abar(x) R(x) - R(x) A(x) - R'(x)| / |A(x)| over the sample points.
pub fn residue_equation_residual(
    system: &FuchsianSystem,
    barred: &FuchsianSystem,
    r: &ElementaryDivisor,
    samples: &[C64],
) -> Result<f64, SchlesingerError> {
    let mut worst: f64 = 0.0;
    for &x in samples {
        let a = eval_coefficient(system, x)?;
        let ab = eval_coefficient(barred, x)?;
        let rx = r.eval(x)?;
        let lhs = &ab * &rx - &rx * &a - r.derivative(x)?;
        worst = worst.max(max_abs(&lhs) / max_abs(&a).max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuchsian_core::{build_system, c64, decompose, riemann_scheme};

    fn sample() -> FuchsianSystem {
        let a1 = CMat::from_row_slice(2, 2, &[c64(0.3, 0.1), c64(0.5, 0.0), c64(0.2, -0.4), c64(-0.6, 0.2)]);
        let a2 = CMat::from_row_slice(2, 2, &[c64(-0.1, 0.0), c64(0.7, 0.3), c64(0.1, 0.1), c64(0.4, -0.3)]);
        let a3 = CMat::from_row_slice(2, 2, &[c64(0.2, 0.5), c64(-0.3, 0.0), c64(0.6, 0.2), c64(0.1, 0.0)]);
        build_system(vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.4, 1.1)], vec![a1, a2, a3]).unwrap()
    }

    #[test]
    fn traces_shift_and_infinity_fixed() {
        let s = sample();
        let idx = TransformationIndex::new(0, 2, 1, 0);
        let (t, _) = transform_system(&s, &idx).unwrap();
        assert!((t.residue(0).trace() - s.residue(0).trace() + 1.0).norm() < 1e-12);
        assert!((t.residue(2).trace() - s.residue(2).trace() - 1.0).norm() < 1e-12);
        assert!(max_abs(&(t.residue_at_infinity() - s.residue_at_infinity())) < 1e-10);
        let before = riemann_scheme(&s, 1e-7).unwrap();
        let after = riemann_scheme(&t, 1e-7).unwrap();
        assert!(after.fuchs_sum().norm() < 1e-10);
        assert!((after.finite[1][0] - before.finite[1][0]).norm() < 1e-9);
    }

    #[test]
    fn reverse_step_restores_system() {
        let s = sample();
        let tol = Tolerances::default();
        let labels = default_labels(&s, tol.cluster).unwrap();
        let idx = TransformationIndex::new(1, 0, 0, 1);
        let (t, lt, _) = transform_system_labelled(&s, &labels, &idx, &tol).unwrap();
        let (back, lb, _) = transform_system_labelled(&t, &lt, &idx.reverse(), &tol).unwrap();
        assert_eq!(lb, labels);
        for (a, b) in s.residues().iter().zip(back.residues()) {
            assert!(max_abs(&(a - b)) < 1e-9);
        }
    }

    #[test]
    fn decomposition_lift_is_consistent() {
        let s = sample();
        let p = decompose(&s).unwrap();
        let idx = TransformationIndex::new(0, 1, 0, 1);
        let (pb, r) = transform_decomposition(&p, &idx).unwrap();
        pb.check(1e-10).unwrap();
        let (t, _) = transform_system(&s, &idx).unwrap();
        for (a, b) in t.residues().iter().zip(pb.residues()) {
            assert!(max_abs(&(a - b)) < 1e-10);
        }
        let f = column(&p.factors[1].b, 1);
        assert!(max_abs(&(r.eval(p.poles[1]).unwrap() * f)) < 1e-12);
        assert!(orthogonality_residual(&p, &pb, &idx) < 1e-9);
    }

    #[test]
    fn invalid_indices() {
        let s = sample();
        let same = TransformationIndex::new(1, 1, 0, 0);
        assert!(matches!(
            transform_system(&s, &same),
            Err(SchlesingerError::InvalidIndex(_))
        ));
        let slot = TransformationIndex::new(0, 1, 2, 0);
        assert!(matches!(
            transform_system(&s, &slot),
            Err(SchlesingerError::InvalidIndex(_))
        ));
    }

    #[test]
    fn degenerate_pairing() {
        // c_1 = (1, 0) at pole 0, b_(2,1) = (0, 1) at pole 1
        let a1 = CMat::from_row_slice(2, 2, &[c64(0.5, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        let a2 = CMat::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.3, 0.0)]);
        let s = build_system(vec![c64(0.0, 0.0), c64(1.0, 0.0)], vec![a1, a2]).unwrap();
        let idx = TransformationIndex::new(0, 1, 0, 0);
        assert!(matches!(
            transform_system(&s, &idx),
            Err(SchlesingerError::DegeneratePairing(_))
        ));
    }
}
