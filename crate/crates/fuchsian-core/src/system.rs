use crate::error::CoreError;
use crate::linalg::{cluster_values, eigenvalues, max_abs, singular_values, CMat, Cluster, C64};

/// Comparison tolerances shared by the analytic modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute max-norm tolerance for identities.
    pub abs: f64,
    /// Eigenvalue clustering radius.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs: 1e-9,
            cluster: 1e-7,
        }
    }
}

/// A(x) = sum_i A_i / (x - u_i); the residue at infinity is always derived.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianSystem {
    poles: Vec<C64>,
    residues: Vec<CMat>,
}

impl FuchsianSystem {
    pub fn matrix_size(&self) -> usize {
        self.residues[0].nrows()
    }

    pub fn n_poles(&self) -> usize {
        self.poles.len()
    }

    pub fn poles(&self) -> &[C64] {
        &self.poles
    }

    pub fn residues(&self) -> &[CMat] {
        &self.residues
    }

    pub fn residue(&self, i: usize) -> &CMat {
        &self.residues[i]
    }

    pub fn residue_at_infinity(&self) -> CMat {
        let m = self.matrix_size();
        -self.residues.iter().fold(CMat::zeros(m, m), |acc, a| acc + a)
    }
}

pub fn build_system(poles: Vec<C64>, residues: Vec<CMat>) -> Result<FuchsianSystem, CoreError> {
    build_system_with(poles, residues, &Tolerances::default())
}

pub fn build_system_with(poles: Vec<C64>, residues: Vec<CMat>, tol: &Tolerances) -> Result<FuchsianSystem, CoreError> {
    if poles.is_empty() {
        return Err(CoreError::EmptySystem);
    }
    if poles.len() != residues.len() {
        return Err(CoreError::Malformed(format!(
            "{} poles but {} residues",
            poles.len(),
            residues.len()
        )));
    }
    let m = residues[0].nrows();
    for (i, a) in residues.iter().enumerate() {
        if a.nrows() != m || a.ncols() != m || m == 0 {
            return Err(CoreError::NonSquareResidue(i));
        }
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::Malformed(format!("non-finite entry in residue {i}")));
        }
    }
    for i in 0..poles.len() {
        for j in (i + 1)..poles.len() {
            if (poles[i] - poles[j]).norm() <= tol.abs {
                return Err(CoreError::DuplicatePoles(i, j));
            }
        }
    }
    for (i, a) in residues.iter().enumerate() {
        diagonalizable_clusters(a, tol.cluster).ok_or(CoreError::NotDiagonalizable(i))?;
    }
    Ok(FuchsianSystem { poles, residues })
}

/// Eigenvalue clusters of `a`, failing when some cluster has a smaller
/// geometric than algebraic multiplicity.
pub fn diagonalizable_clusters(a: &CMat, cluster_tol: f64) -> Option<Vec<Cluster>> {
    let ev = eigenvalues(a)?;
    let clusters = cluster_values(&ev, cluster_tol);
    let scale = max_abs(a).max(1.0);
    let m = a.nrows();
    for cl in &clusters {
        if cl.multiplicity == 1 {
            continue;
        }
        let shifted = a - CMat::identity(m, m) * cl.value;
        let small = singular_values(&shifted)
            .iter()
            .filter(|s| **s <= cluster_tol * scale)
            .count();
        if small < cl.multiplicity {
            return None;
        }
    }
    Some(clusters)
}

pub fn eval_coefficient(system: &FuchsianSystem, x: C64) -> Result<CMat, CoreError> {
    let m = system.matrix_size();
    let mut out = CMat::zeros(m, m);
    for (i, (u, a)) in system.poles.iter().zip(&system.residues).enumerate() {
        let d = x - u;
        if d.norm() <= f64::EPSILON * u.norm().max(1.0) {
            return Err(CoreError::EvaluationAtPole(i));
        }
        out += a / d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, ZERO};

    fn diag(v: &[f64]) -> CMat {
        let m = v.len();
        CMat::from_fn(m, m, |i, j| if i == j { c64(v[i], 0.0) } else { ZERO })
    }

    #[test]
    fn zero_residues_give_zero_infinity() {
        let s = build_system(
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![CMat::zeros(2, 2), CMat::zeros(2, 2)],
        )
        .unwrap();
        assert_eq!(max_abs(&s.residue_at_infinity()), 0.0);
    }

    #[test]
    fn diagonal_sum() {
        let s = build_system(
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![diag(&[1.0, 0.0]), diag(&[0.0, -1.0])],
        )
        .unwrap();
        assert!(max_abs(&(s.residue_at_infinity() - diag(&[-1.0, 1.0]))) < 1e-15);
    }

    #[test]
    fn duplicate_poles_rejected() {
        let r = build_system(vec![ZERO, ZERO], vec![CMat::zeros(2, 2), CMat::zeros(2, 2)]);
        assert_eq!(r, Err(CoreError::DuplicatePoles(0, 1)));
    }

    #[test]
    fn jordan_block_rejected() {
        let j = CMat::from_row_slice(2, 2, &[c64(0.5, 0.0), c64(1.0, 0.0), ZERO, c64(0.5, 0.0)]);
        let r = build_system(vec![ZERO, c64(1.0, 0.0)], vec![j, CMat::zeros(2, 2)]);
        assert_eq!(r, Err(CoreError::NotDiagonalizable(0)));
    }

    #[test]
    fn non_square_rejected() {
        let r = build_system(vec![ZERO], vec![CMat::zeros(2, 3)]);
        assert_eq!(r, Err(CoreError::NonSquareResidue(0)));
    }

    #[test]
    fn eval_single_term() {
        let s = build_system(vec![ZERO], vec![diag(&[1.0, 0.0])]).unwrap();
        let a = eval_coefficient(&s, c64(2.0, 0.0)).unwrap();
        assert!(max_abs(&(a - diag(&[0.5, 0.0]))) < 1e-15);
        assert_eq!(eval_coefficient(&s, ZERO), Err(CoreError::EvaluationAtPole(0)));
    }
}
