use crate::error::CoreError;
use crate::linalg::{
    cluster_values, eigenvalues, identity, inverse, left_null_space, max_abs, normalize_dominant, right_null_space,
    trace, CMat, CVec, C64,
};
use crate::scheme::default_labels;
use crate::system::{build_system_with, diagonalizable_clusters, FuchsianSystem, Tolerances};

/// Factors at one finite pole: A_i = B_i C_i with C_i B_i = diag(theta).
#[derive(Debug, Clone, PartialEq)]
pub struct PoleFactors {
    /// m x r right eigenvectors b_{i,j} as columns.
    pub b: CMat,
    /// r x m left eigenvectors c_i^j as rows.
    pub c: CMat,
    pub theta: Vec<C64>,
}

impl PoleFactors {
    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn residue(&self) -> CMat {
        &self.b * &self.c
    }

    pub fn theta_matrix(&self) -> CMat {
        CMat::from_diagonal(&CVec::from_vec(self.theta.clone()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPoint {
    pub poles: Vec<C64>,
    pub factors: Vec<PoleFactors>,
    /// Residue at infinity that sum_i B_i C_i must reproduce (with a minus sign).
    pub a_inf: CMat,
}

impl DecompositionPoint {
    pub fn matrix_size(&self) -> usize {
        self.a_inf.nrows()
    }

    pub fn n_poles(&self) -> usize {
        self.poles.len()
    }

    pub fn residues(&self) -> Vec<CMat> {
        self.factors.iter().map(PoleFactors::residue).collect()
    }

    pub fn thetas(&self) -> Vec<Vec<C64>> {
        self.factors.iter().map(|f| f.theta.clone()).collect()
    }

    /// Largest violation of C_i B_i = Theta_i, with the pole where it occurs.
    pub fn normalization_residual(&self) -> (usize, f64) {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| (i, max_abs(&(&f.c * &f.b - f.theta_matrix()))))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    pub fn infinity_residual(&self) -> f64 {
        let m = self.matrix_size();
        let sum = self.factors.iter().fold(CMat::zeros(m, m), |acc, f| acc + f.residue());
        max_abs(&(sum + &self.a_inf))
    }

    pub fn check(&self, tol: f64) -> Result<(), CoreError> {
        let m = self.matrix_size();
        if self.poles.len() != self.factors.len() {
            return Err(CoreError::Malformed(format!(
                "{} poles but {} factor pairs",
                self.poles.len(),
                self.factors.len()
            )));
        }
        for (i, f) in self.factors.iter().enumerate() {
            let r = f.rank();
            if f.b.shape() != (m, r) || f.c.shape() != (r, m) {
                return Err(CoreError::Malformed(format!("factor shapes at pole {i}")));
            }
            let zero_col = (0..r).any(|j| f.b.column(j).iter().all(|z| z.norm() == 0.0));
            let zero_row = (0..r).any(|j| f.c.row(j).iter().all(|z| z.norm() == 0.0));
            if zero_col || zero_row {
                return Err(CoreError::Malformed(format!("zero eigenvector at pole {i}")));
            }
        }
        let (pole, residual) = self.normalization_residual();
        if residual > tol {
            return Err(CoreError::NormalizationMismatch { pole, residual });
        }
        let inf = self.infinity_residual();
        if inf > tol {
            return Err(CoreError::InfinityMismatch(inf));
        }
        Ok(())
    }
}

pub fn decompose(system: &FuchsianSystem) -> Result<DecompositionPoint, CoreError> {
    decompose_with(system, &Tolerances::default())
}

pub fn decompose_with(system: &FuchsianSystem, tol: &Tolerances) -> Result<DecompositionPoint, CoreError> {
    let labels = default_labels(system, tol.cluster)?;
    decompose_ordered(system, &labels, tol)
}

/// Decompose with a prescribed slot order: `thetas[i]` lists the nonzero
/// indices at pole i (repeated by multiplicity) in the order the columns of
/// B_i should follow. The list must match the numerical spectrum.
pub fn decompose_ordered(
    system: &FuchsianSystem,
    thetas: &[Vec<C64>],
    tol: &Tolerances,
) -> Result<DecompositionPoint, CoreError> {
    if thetas.len() != system.n_poles() {
        return Err(CoreError::Malformed(format!(
            "{} label lists for {} poles",
            thetas.len(),
            system.n_poles()
        )));
    }
    let factors = system
        .residues()
        .iter()
        .zip(thetas)
        .enumerate()
        .map(|(i, (a, th))| factor_residue(i, a, th, tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecompositionPoint {
        poles: system.poles().to_vec(),
        factors,
        a_inf: system.residue_at_infinity(),
    })
}

fn factor_residue(pole: usize, a: &CMat, theta: &[C64], tol: &Tolerances) -> Result<PoleFactors, CoreError> {
    let m = a.nrows();
    let spectrum = diagonalizable_clusters(a, tol.cluster).ok_or(CoreError::NotDiagonalizable(pole))?;
    let nonzero: Vec<_> = spectrum.iter().filter(|c| c.value.norm() >= tol.cluster).collect();
    let declared = cluster_values(theta, tol.cluster);
    let rank: usize = nonzero.iter().map(|c| c.multiplicity).sum();
    if rank != theta.len() || declared.iter().any(|c| c.value.norm() < tol.cluster) {
        return Err(CoreError::RankMismatch(pole));
    }
    for d in &declared {
        let matched = nonzero
            .iter()
            .any(|c| (c.value - d.value).norm() < tol.cluster && c.multiplicity == d.multiplicity);
        if !matched {
            return Err(CoreError::RankMismatch(pole));
        }
    }

    let mut b = CMat::zeros(m, theta.len());
    let mut c = CMat::zeros(theta.len(), m);
    for d in &declared {
        let slots: Vec<usize> = (0..theta.len())
            .filter(|&j| (theta[j] - d.value).norm() < tol.cluster)
            .collect();
        let k = slots.len();
        let shifted = a - identity(m) * d.value;
        let mut right = right_null_space(&shifted, k);
        for j in 0..k {
            let mut col = right.column(j).into_owned();
            normalize_dominant(&mut col);
            right.set_column(j, &col);
        }
        let left = left_null_space(&shifted, k);
        let pairing = inverse(&(&left * &right)).ok_or(CoreError::EigenFailure(pole))?;
        for (jj, &slot) in slots.iter().enumerate() {
            b.set_column(slot, &right.column(jj));
        }
        let block = pairing * left;
        for (jj, &slot) in slots.iter().enumerate() {
            c.set_row(slot, &(block.row(jj) * theta[slot]));
        }
    }

    let scale = max_abs(a).max(1.0);
    if max_abs(&(&b * &c - a)) > tol.abs.max(1e-8) * scale * 10.0 {
        return Err(CoreError::RankMismatch(pole));
    }
    Ok(PoleFactors {
        b,
        c,
        theta: theta.to_vec(),
    })
}

pub fn recompose(point: &DecompositionPoint) -> Result<FuchsianSystem, CoreError> {
    recompose_with(point, &Tolerances::default())
}

pub fn recompose_with(point: &DecompositionPoint, tol: &Tolerances) -> Result<FuchsianSystem, CoreError> {
    let scale = point.factors.iter().map(|f| max_abs(&f.residue())).fold(1.0, f64::max);
    let inf = point.infinity_residual();
    if inf > tol.abs * scale {
        return Err(CoreError::InfinityMismatch(inf));
    }
    build_system_with(point.poles.clone(), point.residues(), tol)
}

/// H_j = sum_{i != j} tr(A_j A_i) / (u_j - u_i).
pub fn continuous_hamiltonian(point: &DecompositionPoint, j: usize) -> Result<C64, CoreError> {
    let n = point.n_poles();
    if n < 2 {
        return Err(CoreError::SinglePole);
    }
    if j >= n {
        return Err(CoreError::PoleOutOfRange(j));
    }
    let residues = point.residues();
    let uj = point.poles[j];
    Ok((0..n)
        .filter(|&i| i != j)
        .map(|i| trace(&(&residues[j] * &residues[i])) / (uj - point.poles[i]))
        .sum())
}

/// Nonzero eigenvalues of a single matrix in default slot order; convenience for callers
/// holding a bare residue.
pub fn nonzero_spectrum(a: &CMat, cluster_tol: f64) -> Option<Vec<C64>> {
    let mut ev: Vec<C64> = eigenvalues(a)?
        .into_iter()
        .filter(|z| z.norm() >= cluster_tol)
        .collect();
    ev.sort_by(crate::linalg::cmp_complex);
    Some(ev)
}
