//! Exact integer Picard lattices of rational surfaces: intersection pairing,
//! anticanonical decompositions, blow-down structures, push-forward actions
//! and their translation parts on a root basis.

mod dynkin;
mod surfaces;

use serde::Serialize;
use thiserror::Error;

pub use dynkin::{affine_type, cartan_matrix};
pub use surfaces::{a2_p2_surface, a2_standard_surface, dpv_pq_surface, dpv_standard_surface, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("classes live on lattices of rank {0} and {1}")]
    BasisMismatch(usize, usize),
    #[error("unknown generator {0}")]
    UnknownLabel(String),
    #[error("integer overflow")]
    Overflow,
    #[error("expected {expected} images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("action does not preserve the intersection form")]
    NotIsometry,
    #[error("action moves delta")]
    DeltaNotFixed,
    #[error("root {index} is not translated by a multiple of delta")]
    NotTranslation { index: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeClass {
    pub coeffs: Vec<i64>,
}

impl LatticeClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LatticeClass { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    fn same_rank(&self, other: &LatticeClass) -> Result<(), LatticeError> {
        if self.rank() != other.rank() {
            return Err(LatticeError::BasisMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    pub fn add(&self, other: &LatticeClass) -> Result<LatticeClass, LatticeError> {
        self.same_rank(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<_>>();
        Ok(LatticeClass {
            coeffs: coeffs.ok_or(LatticeError::Overflow)?,
        })
    }

    pub fn scale(&self, k: i64) -> Result<LatticeClass, LatticeError> {
        let coeffs = self.coeffs.iter().map(|a| a.checked_mul(k)).collect::<Option<_>>();
        Ok(LatticeClass {
            coeffs: coeffs.ok_or(LatticeError::Overflow)?,
        })
    }

    pub fn sub(&self, other: &LatticeClass) -> Result<LatticeClass, LatticeError> {
        self.add(&other.scale(-1)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::BasisMismatch(n, gram.len()));
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(LatticeBasis { labels, gram })
    }

    /// H_f, H_g, E_1..E_k on a blow-up of P1 x P1.
    pub fn p1xp1(k: usize) -> Self {
        let mut labels = vec!["H_f".to_string(), "H_g".to_string()];
        labels.extend((1..=k).map(|i| format!("E_{i}")));
        Self::blowup(labels, 2, &[[0, 1], [1, 0]])
    }

    /// E, E_1..E_k on a blow-up of P2.
    pub fn p2(k: usize) -> Self {
        let mut labels = vec!["E".to_string()];
        labels.extend((1..=k).map(|i| format!("E_{i}")));
        Self::blowup(labels, 1, &[[1, 0], [0, 0]])
    }

    /// Generic blow-up gram: the first `base` generators pair by `top`, the
    /// remaining ones are orthogonal exceptional classes.
    pub(crate) fn blowup(labels: Vec<String>, base: usize, top: &[[i64; 2]; 2]) -> Self {
        let n = labels.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i < base, j < base) {
                        (true, true) => top[i][j],
                        (false, false) if i == j => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        LatticeBasis { labels, gram }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self, i: usize) -> LatticeClass {
        let mut coeffs = vec![0; self.rank()];
        coeffs[i] = 1;
        LatticeClass { coeffs }
    }

    /// Class from (label, coefficient) terms; labels may repeat.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<LatticeClass, LatticeError> {
        let mut coeffs = vec![0i64; self.rank()];
        for (label, k) in terms {
            let i = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))?;
            coeffs[i] = coeffs[i].checked_add(*k).ok_or(LatticeError::Overflow)?;
        }
        Ok(LatticeClass { coeffs })
    }

    /// a^T G b.
    pub fn pair(&self, a: &LatticeClass, b: &LatticeClass) -> Result<i64, LatticeError> {
        if a.rank() != self.rank() || b.rank() != self.rank() {
            return Err(LatticeError::BasisMismatch(a.rank(), b.rank()));
        }
        let mut total: i64 = 0;
        for (i, ai) in a.coeffs.iter().enumerate() {
            for (j, bj) in b.coeffs.iter().enumerate() {
                let term = ai
                    .checked_mul(self.gram[i][j])
                    .and_then(|x| x.checked_mul(*bj))
                    .ok_or(LatticeError::Overflow)?;
                total = total.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(total)
    }

    /// Genus from 2g - 2 = C^2 + C.K, with K = -(minus_k).
    pub fn genus(&self, c: &LatticeClass, minus_k: &LatticeClass) -> Result<i64, LatticeError> {
        let two_g_minus_two = self.pair(c, c)? - self.pair(c, minus_k)?;
        Ok((two_g_minus_two + 2) / 2)
    }

    /// Sum of mult * D_i equals -K and every D_i is a (-2)-class.
    /// Failures are returned as diagnostics.
    pub fn verify_anticanonical_decomposition(
        &self,
        minus_k: &LatticeClass,
        components: &[(LatticeClass, i64)],
    ) -> Result<Vec<String>, LatticeError> {
        let mut issues = Vec::new();
        let mut sum = LatticeClass::new(vec![0; self.rank()]);
        for (i, (d, mult)) in components.iter().enumerate() {
            sum = sum.add(&d.scale(*mult)?)?;
            let sq = self.pair(d, d)?;
            if sq != -2 {
                issues.push(format!("D_{i}^2 = {sq}"));
            }
        }
        if &sum != minus_k {
            issues.push(format!(
                "sum of components {:?} differs from -K {:?}",
                sum.coeffs, minus_k.coeffs
            ));
        }
        Ok(issues)
    }

    /// H_f.H_g = 1, H^2 = 0, E_i^2 = -1, all other pairings 0 and every class rational.
    pub fn verify_blowdown_structure(
        &self,
        minus_k: &LatticeClass,
        h_f: &LatticeClass,
        h_g: &LatticeClass,
        exceptional: &[LatticeClass],
    ) -> Result<Vec<String>, LatticeError> {
        let mut issues = Vec::new();
        let mut named = vec![("H_f".to_string(), h_f), ("H_g".to_string(), h_g)];
        named.extend(exceptional.iter().enumerate().map(|(i, e)| (format!("E_{}", i + 1), e)));
        for (i, (ni, ci)) in named.iter().enumerate() {
            for (j, (nj, cj)) in named.iter().enumerate().skip(i) {
                let expected = match (i, j) {
                    (0, 1) => 1,
                    _ if i == j && i < 2 => 0,
                    _ if i == j => -1,
                    _ => 0,
                };
                let got = self.pair(ci, cj)?;
                if got != expected {
                    issues.push(format!("{ni}.{nj} = {got}, expected {expected}"));
                }
            }
            let g = self.genus(ci, minus_k)?;
            if g != 0 {
                issues.push(format!("{ni} has genus {g}"));
            }
        }
        Ok(issues)
    }
}

/// Push-forward on generators: column j holds the image of generator j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeAction {
    pub matrix: Vec<Vec<i64>>,
}

impl LatticeAction {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, c: &LatticeClass) -> Result<LatticeClass, LatticeError> {
        if c.rank() != self.rank() {
            return Err(LatticeError::BasisMismatch(self.rank(), c.rank()));
        }
        let mut coeffs = vec![0i64; self.rank()];
        for (i, out) in coeffs.iter_mut().enumerate() {
            for (j, cj) in c.coeffs.iter().enumerate() {
                let t = self.matrix[i][j].checked_mul(*cj).ok_or(LatticeError::Overflow)?;
                *out = out.checked_add(t).ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(LatticeClass { coeffs })
    }

    pub fn fixes(&self, c: &LatticeClass) -> Result<bool, LatticeError> {
        Ok(&self.apply(c)? == c)
    }
}

/// Builds the action from the images of the generators and checks M^T G M = G.
pub fn build_action(basis: &LatticeBasis, images: &[LatticeClass]) -> Result<LatticeAction, LatticeError> {
    let n = basis.rank();
    if images.len() != n {
        return Err(LatticeError::WrongImageCount {
            expected: n,
            got: images.len(),
        });
    }
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            if basis.pair(a, b)? != basis.gram[i][j] {
                return Err(LatticeError::NotIsometry);
            }
        }
    }
    let matrix = (0..n)
        .map(|i| images.iter().map(|img| img.coeffs[i]).collect())
        .collect();
    Ok(LatticeAction { matrix })
}

/// k_i with action(alpha_i) = alpha_i + k_i delta for every root.
pub fn translation_vector(
    action: &LatticeAction,
    roots: &[LatticeClass],
    delta: &LatticeClass,
) -> Result<Vec<i64>, LatticeError> {
    if !action.fixes(delta)? {
        return Err(LatticeError::DeltaNotFixed);
    }
    let pivot = delta
        .coeffs
        .iter()
        .position(|&c| c != 0)
        .ok_or(LatticeError::DeltaNotFixed)?;
    roots
        .iter()
        .enumerate()
        .map(|(index, alpha)| {
            let diff = action.apply(alpha)?.sub(alpha)?;
            let k = diff.coeffs[pivot] / delta.coeffs[pivot];
            if diff != delta.scale(k)? {
                return Err(LatticeError::NotTranslation { index });
            }
            Ok(k)
        })
        .collect()
}
