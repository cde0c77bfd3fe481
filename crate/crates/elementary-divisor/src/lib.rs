//! Rank-one multipliers R(x) = I + (z - zeta)/(x - z) P with P = f g / (g f).
//!
//! det R(x) = (x - zeta)/(x - z), and R(x)^{-1} = I + (zeta - z)/(x - zeta) P.
//! Gradients of the scalar w R(x) v with respect to f, g, v, w satisfy the
//! vanishing rule (d_f F) f = g (d_g F) = 0 and the exchange rule
//! v (d_v F) - (d_w F) w = (d_g F) g - f (d_f F).

use fuchsian_core::linalg::{dot, identity, max_abs, outer};
use fuchsian_core::{CMat, CRow, CVec, C64};
use thiserror::Error;

/// Smallest |g f| accepted at construction.
pub const PAIRING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DivisorError {
    #[error("pairing g f = {0:e} is too small for a rank-one projector")]
    DegeneratePairing(f64),
    #[error("pole and zero of the divisor coincide")]
    CoincidentPoints,
    #[error("f has {0} entries but g has {1}")]
    DimensionMismatch(usize, usize),
    #[error("evaluation at the pole z")]
    EvalAtPole,
    #[error("inverse evaluated at the zero zeta")]
    EvalAtZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryDivisor {
    z: C64,
    zeta: C64,
    f: CVec,
    g: CRow,
    gf: C64,
}

/// Partial derivatives of F = w R(x) v. Row/column orientation follows the
/// variable the derivative is dual to: d_f and d_v are rows, d_g and d_w columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub df: CRow,
    pub dg: CVec,
    pub dv: CRow,
    pub dw: CVec,
}

fn near(a: C64, b: C64) -> bool {
    (a - b).norm() <= f64::EPSILON * a.norm().max(b.norm()).max(1.0)
}

/// d/df and d/dg of w P(f, g) v where P = f g / (g f).
pub fn projector_pairing_gradients(f: &CVec, g: &CRow, v: &CVec, w: &CRow) -> (CRow, CVec) {
    let gf = dot(g, f);
    let wf = dot(w, f);
    let gv = dot(g, v);
    let df = w * (gv / gf) - g * (wf * gv / (gf * gf));
    let dg = v * (wf / gf) - f * (wf * gv / (gf * gf));
    (df, dg)
}

impl ElementaryDivisor {
    pub fn new(z: C64, zeta: C64, f: CVec, g: CRow) -> Result<Self, DivisorError> {
        if f.len() != g.len() {
            return Err(DivisorError::DimensionMismatch(f.len(), g.len()));
        }
        if near(z, zeta) {
            return Err(DivisorError::CoincidentPoints);
        }
        let gf = dot(&g, &f);
        if gf.norm() < PAIRING_TOL {
            return Err(DivisorError::DegeneratePairing(gf.norm()));
        }
        Ok(ElementaryDivisor { z, zeta, f, g, gf })
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    pub fn f(&self) -> &CVec {
        &self.f
    }

    pub fn g(&self) -> &CRow {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn projector(&self) -> CMat {
        outer(&self.f, &self.g) / self.gf
    }

    /// Coefficient s(x) = (z - zeta)/(x - z) of P in R(x).
    pub fn coefficient(&self, x: C64) -> Result<C64, DivisorError> {
        if near(x, self.z) {
            return Err(DivisorError::EvalAtPole);
        }
        Ok((self.z - self.zeta) / (x - self.z))
    }

    pub fn eval(&self, x: C64) -> Result<CMat, DivisorError> {
        Ok(identity(self.dim()) + self.projector() * self.coefficient(x)?)
    }

    pub fn eval_inverse(&self, x: C64) -> Result<CMat, DivisorError> {
        if near(x, self.zeta) {
            return Err(DivisorError::EvalAtZero);
        }
        Ok(identity(self.dim()) + self.projector() * ((self.zeta - self.z) / (x - self.zeta)))
    }

    pub fn derivative(&self, x: C64) -> Result<CMat, DivisorError> {
        let s = self.coefficient(x)?;
        Ok(self.projector() * (-s / (x - self.z)))
    }

    /// w R(x) v.
    pub fn pairing(&self, v: &CVec, w: &CRow, x: C64) -> Result<C64, DivisorError> {
        let s = self.coefficient(x)?;
        Ok(dot(w, v) + s * dot(w, &self.f) * dot(&self.g, v) / self.gf)
    }

    pub fn gradients(&self, v: &CVec, w: &CRow, x: C64) -> Result<Gradients, DivisorError> {
        let s = self.coefficient(x)?;
        let (df, dg) = projector_pairing_gradients(&self.f, &self.g, v, w);
        let p = self.projector();
        let r = identity(self.dim()) + &p * s;
        Ok(Gradients {
            df: df * s,
            dg: dg * s,
            dv: w * &r,
            dw: r * v,
        })
    }

    /// max(|(d_f F) f|, |g (d_g F)|); zero up to rounding.
    pub fn check_vanishing_rule(&self, v: &CVec, w: &CRow, x: C64) -> Result<f64, DivisorError> {
        let gr = self.gradients(v, w, x)?;
        Ok(dot(&gr.df, &self.f).norm().max(dot(&self.g, &gr.dg).norm()))
    }

    /// Max-norm of [v (d_v F) - (d_w F) w] - [(d_g F) g - f (d_f F)].
    pub fn check_exchange_rule(&self, v: &CVec, w: &CRow, x: C64) -> Result<f64, DivisorError> {
        let gr = self.gradients(v, w, x)?;
        let lhs = outer(v, &gr.dv) - outer(&gr.dw, w);
        let rhs = outer(&gr.dg, &self.g) - outer(&self.f, &gr.df);
        Ok(max_abs(&(lhs - rhs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuchsian_core::c64;

    fn sample() -> ElementaryDivisor {
        let f = CVec::from_vec(vec![c64(1.0, 0.5), c64(-0.3, 0.2), c64(0.7, -1.0)]);
        let g = CRow::from_vec(vec![c64(0.2, 0.1), c64(1.0, 0.0), c64(-0.4, 0.9)]);
        ElementaryDivisor::new(c64(0.0, 0.0), c64(1.0, 0.0), f, g).unwrap()
    }

    #[test]
    fn determinant_at_two() {
        let r = sample().eval(c64(2.0, 0.0)).unwrap();
        assert!((r.determinant() - c64(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_at_large_x() {
        let r = sample().eval(c64(1e8, 0.0)).unwrap();
        assert!(max_abs(&(r - identity(3))) < 1e-7);
    }

    #[test]
    fn inverse_is_swapped_divisor() {
        let d = sample();
        let swapped = ElementaryDivisor::new(d.zeta(), d.z(), d.f().clone(), d.g().clone()).unwrap();
        let x = c64(0.3, 0.8);
        assert!(max_abs(&(d.eval_inverse(x).unwrap() - swapped.eval(x).unwrap())) < 1e-14);
    }

    #[test]
    fn rejections() {
        let f = CVec::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]);
        let g = CRow::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0)]);
        let z = c64(0.0, 0.0);
        assert!(matches!(
            ElementaryDivisor::new(z, c64(1.0, 0.0), f.clone(), g.clone()),
            Err(DivisorError::DegeneratePairing(_))
        ));
        assert_eq!(
            ElementaryDivisor::new(z, z, f.clone(), f.transpose()),
            Err(DivisorError::CoincidentPoints)
        );
        let d = sample();
        assert_eq!(d.eval(d.z()), Err(DivisorError::EvalAtPole));
        assert_eq!(d.eval_inverse(d.zeta()), Err(DivisorError::EvalAtZero));
    }

    #[test]
    fn aligned_vectors() {
        let d = sample();
        let x = c64(-0.5, 0.25);
        assert!(d.check_vanishing_rule(d.f(), d.g(), x).unwrap() < 1e-12);
        assert!(d.check_exchange_rule(d.f(), d.g(), x).unwrap() < 1e-12);
    }
}
