//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, RowDVector, Schur};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type CRow = RowDVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Max-norm (largest entry modulus) of a matrix or vector.
pub fn max_abs<'a>(m: impl IntoIterator<Item = &'a C64>) -> f64 {
    m.into_iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_slice(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Eigenvalues from the complex Schur form, in the order they appear on the diagonal.
pub fn eigenvalues(a: &CMat) -> Option<Vec<C64>> {
    let n = a.nrows();
    if n == 0 {
        return Some(vec![]);
    }
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 100_000)?;
    let (_, t) = schur.unpack();
    Some((0..n).map(|i| t[(i, i)]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: C64,
    pub multiplicity: usize,
}

/// Greedy clustering: each value joins the first cluster whose running mean
/// lies within `tol`, otherwise it opens a new cluster.
pub fn cluster_values(values: &[C64], tol: f64) -> Vec<Cluster> {
    let mut sums: Vec<(C64, usize)> = Vec::new();
    for &v in values {
        match sums.iter_mut().find(|(s, k)| (*s / *k as f64 - v).norm() < tol) {
            Some(entry) => {
                entry.0 += v;
                entry.1 += 1;
            }
            None => sums.push((v, 1)),
        }
    }
    sums.into_iter()
        .map(|(s, k)| Cluster {
            value: s / k as f64,
            multiplicity: k,
        })
        .collect()
}

/// Lexicographic order on (re, im); used wherever a deterministic slot order is needed.
pub fn cmp_complex(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    a.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Orthonormal basis (as columns) of the `k` right-singular directions with the
/// smallest singular values.
pub fn right_null_space(a: &CMat, k: usize) -> CMat {
    let n = a.ncols();
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let rows = vt.nrows();
    CMat::from_fn(n, k, |i, j| vt[(rows - k + j, i)].conj())
}

/// Rows spanning the approximate left null space: w with w a ≈ 0.
pub fn left_null_space(a: &CMat, k: usize) -> CMat {
    right_null_space(&a.transpose(), k).transpose()
}

/// Index of the largest-modulus entry; near-ties (relative 1e-12) go to the lowest index.
pub fn dominant_index(v: &[C64]) -> usize {
    let m = max_abs_slice(v);
    v.iter().position(|z| z.norm() >= m * (1.0 - 1e-12)).unwrap_or(0)
}

/// Scale a column so its dominant entry equals one; returns the divisor used.
pub fn normalize_dominant(v: &mut CVec) -> C64 {
    let s = v[dominant_index(v.as_slice())];
    *v /= s;
    s
}

pub fn identity(m: usize) -> CMat {
    CMat::identity(m, m)
}

pub fn outer(col: &CVec, row: &CRow) -> CMat {
    col * row
}

pub fn dot(row: &CRow, col: &CVec) -> C64 {
    (row * col)[(0, 0)]
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    a.clone().try_inverse()
}

pub fn trace(a: &CMat) -> C64 {
    a.trace()
}

pub fn det(a: &CMat) -> C64 {
    a.determinant()
}

/// Left inverse (B^H B)^{-1} B^H of a full-column-rank matrix.
pub fn left_inverse(b: &CMat) -> Option<CMat> {
    let bh = b.adjoint();
    inverse(&(&bh * b)).map(|g| g * bh)
}

/// Right inverse C^H (C C^H)^{-1} of a full-row-rank matrix.
pub fn right_inverse(c: &CMat) -> Option<CMat> {
    let ch = c.adjoint();
    inverse(&(c * &ch)).map(|g| ch * g)
}

pub fn column(m: &CMat, j: usize) -> CVec {
    m.column(j).into_owned()
}

pub fn row(m: &CMat, i: usize) -> CRow {
    m.row(i).into_owned()
}
