use crate::error::CoreError;
use crate::linalg::{cluster_values, cmp_complex, eigenvalues, C64};
use crate::system::{diagonalizable_clusters, FuchsianSystem, Tolerances};

/// Characteristic indices of a system: nonzero indices per finite pole
/// (repeated by multiplicity, in slot order) and all m indices at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannScheme {
    pub finite: Vec<Vec<C64>>,
    pub infinity: Vec<C64>,
    /// Multiplicity partitions, finite poles first, infinity last. At a finite
    /// pole the multiplicity of the zero index (if present) comes first.
    pub spectral_type: Vec<Vec<usize>>,
}

impl RiemannScheme {
    pub fn fuchs_sum(&self) -> C64 {
        self.finite.iter().flatten().sum::<C64>() + self.infinity.iter().sum::<C64>()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.finite.iter().map(|t| t.len()).collect()
    }

    /// Assumption 2: the zero index carries the highest multiplicity at every finite pole.
    pub fn zero_dominant(&self) -> bool {
        let m = self.infinity.len();
        self.spectral_type[..self.finite.len()]
            .iter()
            .zip(&self.finite)
            .all(|(parts, nonzero)| {
                let zero = m - nonzero.len();
                zero > 0 && parts.iter().all(|&p| p <= zero)
            })
    }
}

/// Nonzero eigenvalues at each finite pole, ordered lexicographically by
/// (re, im) and repeated by multiplicity. This fixes the default slot order.
pub fn default_labels(system: &FuchsianSystem, cluster_tol: f64) -> Result<Vec<Vec<C64>>, CoreError> {
    system
        .residues()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let clusters = diagonalizable_clusters(a, cluster_tol).ok_or(CoreError::NotDiagonalizable(i))?;
            let mut nonzero: Vec<_> = clusters.into_iter().filter(|c| c.value.norm() >= cluster_tol).collect();
            nonzero.sort_by(|a, b| cmp_complex(&a.value, &b.value));
            Ok(nonzero
                .iter()
                .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
                .collect())
        })
        .collect()
}

pub fn riemann_scheme(system: &FuchsianSystem, cluster_tol: f64) -> Result<RiemannScheme, CoreError> {
    let m = system.matrix_size();
    let finite = default_labels(system, cluster_tol)?;
    let mut spectral_type = Vec::with_capacity(finite.len() + 1);
    for labels in &finite {
        let mut parts: Vec<usize> = cluster_values(labels, cluster_tol)
            .iter()
            .map(|c| c.multiplicity)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let zero = m - labels.len();
        if zero > 0 {
            parts.insert(0, zero);
        }
        spectral_type.push(parts);
    }
    let a_inf = system.residue_at_infinity();
    let mut infinity = eigenvalues(&a_inf).ok_or(CoreError::EigenFailure(system.n_poles()))?;
    infinity.sort_by(cmp_complex);
    let mut parts: Vec<usize> = cluster_values(&infinity, cluster_tol)
        .iter()
        .map(|c| c.multiplicity)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    spectral_type.push(parts);

    let scheme = RiemannScheme {
        finite,
        infinity,
        spectral_type,
    };
    let scale = system
        .residues()
        .iter()
        .map(|a| a.iter().fold(0.0f64, |s, z| s.max(z.norm())))
        .fold(1.0f64, f64::max);
    let sum = scheme.fuchs_sum().norm();
    if sum > Tolerances::default().abs * scale * m as f64 {
        return Err(CoreError::FuchsViolation(sum));
    }
    Ok(scheme)
}

/// Dimension (n-1)m^2 - sum of squared multiplicities + 2, where the
/// partitions cover the n finite poles and infinity.
pub fn accessory_dimension(spectral_type: &[Vec<usize>], n: usize, m: usize) -> Result<i64, CoreError> {
    if spectral_type.len() != n + 1 {
        return Err(CoreError::InvalidPartition(format!(
            "expected {} partitions (n finite points and infinity), got {}",
            n + 1,
            spectral_type.len()
        )));
    }
    let mut squares: i64 = 0;
    for (k, parts) in spectral_type.iter().enumerate() {
        if parts.contains(&0) {
            return Err(CoreError::InvalidPartition(format!("zero part at point {k}")));
        }
        let total: usize = parts.iter().sum();
        if total != m {
            return Err(CoreError::InvalidPartition(format!(
                "parts at point {k} sum to {total}, not {m}"
            )));
        }
        squares += parts.iter().map(|&p| (p * p) as i64).sum::<i64>();
    }
    let m2 = (m * m) as i64;
    Ok((n as i64 - 1) * m2 - squares + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, CMat, ZERO};
    use crate::system::build_system;

    fn diag(v: &[f64]) -> CMat {
        let m = v.len();
        CMat::from_fn(m, m, |i, j| if i == j { c64(v[i], 0.0) } else { ZERO })
    }

    #[test]
    fn diagonal_scheme() {
        let s = build_system(
            vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0)],
            vec![diag(&[0.5, 0.0]), diag(&[-0.2, 0.0]), diag(&[0.3, 0.0])],
        )
        .unwrap();
        let rs = riemann_scheme(&s, 1e-7).unwrap();
        assert!((rs.finite[0][0] - c64(0.5, 0.0)).norm() < 1e-14);
        assert!((rs.finite[1][0] - c64(-0.2, 0.0)).norm() < 1e-14);
        assert!((rs.finite[2][0] - c64(0.3, 0.0)).norm() < 1e-14);
        let k: C64 = rs.infinity.iter().sum();
        assert!((k - c64(-0.6, 0.0)).norm() < 1e-14);
        assert_eq!(rs.spectral_type[0], vec![1, 1]);
    }

    #[test]
    fn zero_system_scheme() {
        let s = build_system(vec![ZERO, c64(1.0, 0.0)], vec![CMat::zeros(2, 2), CMat::zeros(2, 2)]).unwrap();
        let rs = riemann_scheme(&s, 1e-7).unwrap();
        assert!(rs.finite.iter().all(|t| t.is_empty()));
        assert!(rs.infinity.iter().all(|k| k.norm() < 1e-15));
        assert_eq!(rs.spectral_type, vec![vec![2], vec![2], vec![2]]);
    }

    #[test]
    fn dimension_examples() {
        let dpv = vec![vec![1, 1]; 4];
        assert_eq!(accessory_dimension(&dpv, 3, 2), Ok(2));
        let a2 = vec![vec![1, 1, 1]; 3];
        assert_eq!(accessory_dimension(&a2, 2, 3), Ok(2));
        for n in 1..6 {
            assert_eq!(accessory_dimension(&vec![vec![1]; n + 1], n, 1), Ok(0));
        }
        assert!(matches!(
            accessory_dimension(&[vec![1, 2], vec![2]], 1, 2),
            Err(CoreError::InvalidPartition(_))
        ));
    }
}
