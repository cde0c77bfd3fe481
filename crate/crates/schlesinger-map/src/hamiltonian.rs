//! The right discrete Hamiltonian H+(B, Cbar; Theta) of an elementary step,
//! stored as a weighted sum of logarithms of bilinear pairings so that its
//! value, analytic gradients and finite differences share one description.

use elementary_divisor::projector_pairing_gradients;
use fuchsian_core::linalg::{column, dot, max_abs, row};
use fuchsian_core::{CMat, CRow, CVec, DecompositionPoint, C64};

use crate::error::SchlesingerError;
use crate::index::TransformationIndex;

/// Relative tolerance for the two generating equations and for orthogonality.
pub const GENERATING_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
/// Relative tolerance for analytic vs central-difference gradients.
pub const FD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteHamiltonianInput {
    pub poles: Vec<C64>,
    /// Un-barred B_i (m x r_i).
    pub b: Vec<CMat>,
    /// Barred Cbar_i (r_i x m).
    pub c_bar: Vec<CMat>,
    /// Un-barred indices theta_I in slot order.
    pub theta: Vec<Vec<C64>>,
    pub index: TransformationIndex,
}

impl DiscreteHamiltonianInput {
    pub fn from_points(point: &DecompositionPoint, barred: &DecompositionPoint, index: TransformationIndex) -> Self {
        DiscreteHamiltonianInput {
            poles: point.poles.clone(),
            b: point.factors.iter().map(|f| f.b.clone()).collect(),
            c_bar: barred.factors.iter().map(|f| f.c.clone()).collect(),
            theta: point.thetas(),
            index,
        }
    }

    fn b_col(&self, (i, j): (usize, usize)) -> CVec {
        column(&self.b[i], j)
    }

    fn c_row(&self, (i, j): (usize, usize)) -> CRow {
        row(&self.c_bar[i], j)
    }
}

/// s * f g / (g f) with f a b-slot and g a cbar-slot.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Projector {
    s: C64,
    f: (usize, usize),
    g: (usize, usize),
}

/// weight * log(w (I + sum of projectors) v), w a cbar-slot and v a b-slot.
#[derive(Debug, Clone, PartialEq)]
struct LogTerm {
    weight: C64,
    w: (usize, usize),
    v: (usize, usize),
    projectors: Vec<Projector>,
}

fn terms(input: &DiscreteHamiltonianInput) -> Vec<LogTerm> {
    let TransformationIndex { alpha, beta, mu, nu } = input.index;
    let am = (alpha, mu);
    let bn = (beta, nu);
    let t_am = input.theta[alpha][mu];
    let t_bn = input.theta[beta][nu];
    let d = input.poles[alpha] - input.poles[beta];
    let mut out = vec![
        LogTerm {
            weight: t_bn - t_am + 1.0,
            w: bn,
            v: bn,
            projectors: vec![],
        },
        LogTerm {
            weight: t_am,
            w: bn,
            v: am,
            projectors: vec![],
        },
        LogTerm {
            weight: t_am - 1.0,
            w: am,
            v: bn,
            projectors: vec![],
        },
    ];
    for (i, thetas) in input.theta.iter().enumerate() {
        for (j, &theta) in thetas.iter().enumerate() {
            if (i, j) == am || (i, j) == bn {
                continue;
            }
            let projectors = if i == alpha {
                vec![
                    Projector {
                        s: C64::new(-1.0, 0.0),
                        f: am,
                        g: bn,
                    },
                    Projector {
                        s: C64::new(-1.0, 0.0),
                        f: bn,
                        g: am,
                    },
                ]
            } else {
                vec![Projector {
                    s: d / (input.poles[i] - input.poles[alpha]),
                    f: bn,
                    g: bn,
                }]
            };
            out.push(LogTerm {
                weight: theta,
                w: (i, j),
                v: (i, j),
                projectors,
            });
        }
    }
    out
}

fn argument(input: &DiscreteHamiltonianInput, t: &LogTerm) -> C64 {
    let w = input.c_row(t.w);
    let v = input.b_col(t.v);
    let mut a = dot(&w, &v);
    for p in &t.projectors {
        let f = input.b_col(p.f);
        let g = input.c_row(p.g);
        a += p.s * dot(&w, &f) * dot(&g, &v) / dot(&g, &f);
    }
    a
}

fn checked_arguments(input: &DiscreteHamiltonianInput) -> Result<Vec<(LogTerm, C64)>, SchlesingerError> {
    terms(input)
        .into_iter()
        .map(|t| {
            let a = argument(input, &t);
            let scale = input.c_row(t.w).norm() * input.b_col(t.v).norm();
            if !(a.norm() > 1e-14 * scale) || !a.is_finite() {
                return Err(SchlesingerError::LogOfZeroPairing {
                    pole: t.w.0,
                    slot: t.w.1,
                });
            }
            Ok((t, a))
        })
        .collect()
}

/// H+ on the principal branch of the logarithm.
pub fn discrete_hamiltonian(input: &DiscreteHamiltonianInput) -> Result<C64, SchlesingerError> {
    Ok(checked_arguments(input)?.iter().map(|(t, a)| t.weight * a.ln()).sum())
}

/// dH/db_(i,j) as the rows of `b[i]` (r_i x m) and dH/dcbar_i^j as the columns
/// of `c_bar[i]` (m x r_i), so the generating equations read
/// `b[i] = C_i` and `c_bar[i] = Bbar_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianGradient {
    pub b: Vec<CMat>,
    pub c_bar: Vec<CMat>,
}

pub fn hamiltonian_gradient(input: &DiscreteHamiltonianInput) -> Result<HamiltonianGradient, SchlesingerError> {
    let m = input.b[0].nrows();
    let mut gb: Vec<CMat> = input.b.iter().map(|b| CMat::zeros(b.ncols(), m)).collect();
    let mut gc: Vec<CMat> = input.c_bar.iter().map(|c| CMat::zeros(m, c.nrows())).collect();
    for (t, a) in checked_arguments(input)? {
        let k = t.weight / a;
        let w = input.c_row(t.w);
        let v = input.b_col(t.v);
        let mut mv = v.clone();
        let mut wm = w.clone();
        for p in &t.projectors {
            let f = input.b_col(p.f);
            let g = input.c_row(p.g);
            let gf = dot(&g, &f);
            mv += &f * (p.s * dot(&g, &v) / gf);
            wm += &g * (p.s * dot(&w, &f) / gf);
            let (df, dg) = projector_pairing_gradients(&f, &g, &v, &w);
            let r = gb[p.f.0].row(p.f.1) + df * (k * p.s);
            gb[p.f.0].set_row(p.f.1, &r);
            let c = gc[p.g.0].column(p.g.1) + dg * (k * p.s);
            gc[p.g.0].set_column(p.g.1, &c);
        }
        let r = gb[t.v.0].row(t.v.1) + wm * k;
        gb[t.v.0].set_row(t.v.1, &r);
        let c = gc[t.w.0].column(t.w.1) + mv * k;
        gc[t.w.0].set_column(t.w.1, &c);
    }
    Ok(HamiltonianGradient { b: gb, c_bar: gc })
}

/// H+(x + h) - H+(x - h) without crossing a branch cut: the log of each
/// argument ratio is taken separately.
fn branch_safe_difference(
    plus: &DiscreteHamiltonianInput,
    minus: &DiscreteHamiltonianInput,
) -> Result<C64, SchlesingerError> {
    let p = checked_arguments(plus)?;
    let m = checked_arguments(minus)?;
    Ok(p.iter().zip(&m).map(|((t, a), (_, b))| t.weight * (a / b).ln()).sum())
}

/// Central differences of H+ with respect to every entry of every b and cbar,
/// laid out like `HamiltonianGradient`.
pub fn finite_difference_gradient(
    input: &DiscreteHamiltonianInput,
    step: f64,
) -> Result<HamiltonianGradient, SchlesingerError> {
    let m = input.b[0].nrows();
    let mut gb: Vec<CMat> = input.b.iter().map(|b| CMat::zeros(b.ncols(), m)).collect();
    let mut gc: Vec<CMat> = input.c_bar.iter().map(|c| CMat::zeros(m, c.nrows())).collect();
    for i in 0..input.b.len() {
        for j in 0..input.b[i].ncols() {
            for k in 0..m {
                let mut plus = input.clone();
                let mut minus = input.clone();
                plus.b[i][(k, j)] += step;
                minus.b[i][(k, j)] -= step;
                gb[i][(j, k)] = branch_safe_difference(&plus, &minus)? / (2.0 * step);

                let mut plus = input.clone();
                let mut minus = input.clone();
                plus.c_bar[i][(j, k)] += step;
                minus.c_bar[i][(j, k)] -= step;
                gc[i][(k, j)] = branch_safe_difference(&plus, &minus)? / (2.0 * step);
            }
        }
    }
    Ok(HamiltonianGradient { b: gb, c_bar: gc })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotResidual {
    pub pole: usize,
    pub slot: usize,
    pub residual: f64,
}

/// Residuals of the generating equations for one step.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingReport {
    /// |dH/db_(i,j) - c_i^j| relative to |c_i^j|.
    pub b_gradient: Vec<SlotResidual>,
    /// |cbar_i^j b'_(i,j) - thetabar_i^j| with b' = dH/dcbar_i^j, relative to max(1, |thetabar|).
    pub c_bar_normalization: Vec<SlotResidual>,
    /// Per pole: |sum_j b'_(i,j) cbar_i^j - Abar_i| relative to max(1, |Abar_i|).
    pub c_bar_residue: Vec<f64>,
    /// Analytic vs central differences, per slot, relative to max(1, |gradient|).
    pub finite_difference: Vec<SlotResidual>,
    pub orthogonality: f64,
}

impl GeneratingReport {
    pub fn worst_generating(&self) -> f64 {
        self.b_gradient
            .iter()
            .chain(&self.c_bar_normalization)
            .map(|s| s.residual)
            .chain(self.c_bar_residue.iter().copied())
            .fold(0.0, f64::max)
    }

    pub fn worst_finite_difference(&self) -> f64 {
        self.finite_difference.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.worst_generating() < GENERATING_TOL
            && self.worst_finite_difference() < FD_TOL
            && self.orthogonality < ORTHOGONALITY_TOL
    }
}

impl std::fmt::Display for GeneratingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "generating residual {:.3e}, finite-difference residual {:.3e}, orthogonality {:.3e}",
            self.worst_generating(),
            self.worst_finite_difference(),
            self.orthogonality
        )
    }
}

/// Checks that H+ generates the step from `point` to `barred`:
/// dH/dB reproduces C, dH/dCbar reproduces Bbar (through the normalization
/// and the residues), and analytic gradients match central differences.
pub fn verify_generating(
    point: &DecompositionPoint,
    barred: &DecompositionPoint,
    idx: &TransformationIndex,
    fd_step: f64,
) -> Result<GeneratingReport, SchlesingerError> {
    let input = DiscreteHamiltonianInput::from_points(point, barred, *idx);
    let grad = hamiltonian_gradient(&input)?;
    let fd = finite_difference_gradient(&input, fd_step)?;
    let barred_res = barred.residues();

    let mut report = GeneratingReport {
        b_gradient: vec![],
        c_bar_normalization: vec![],
        c_bar_residue: vec![],
        finite_difference: vec![],
        orthogonality: crate::transform::orthogonality_residual(point, barred, idx),
    };
    for (i, f) in point.factors.iter().enumerate() {
        let bf = &barred.factors[i];
        for j in 0..f.rank() {
            let c = row(&f.c, j);
            let res = max_abs(&(grad.b[i].row(j) - &c)) / max_abs(&c).max(f64::MIN_POSITIVE);
            report.b_gradient.push(SlotResidual {
                pole: i,
                slot: j,
                residual: res,
            });

            let b_prime = column(&grad.c_bar[i], j);
            let theta = bf.theta[j];
            let res = (dot(&row(&bf.c, j), &b_prime) - theta).norm() / theta.norm().max(1.0);
            report.c_bar_normalization.push(SlotResidual {
                pole: i,
                slot: j,
                residual: res,
            });

            let an_b = grad.b[i].row(j).into_owned();
            let an_c = grad.c_bar[i].column(j).into_owned();
            let err_b = max_abs(&(&an_b - fd.b[i].row(j))) / max_abs(&an_b).max(1.0);
            let err_c = max_abs(&(&an_c - fd.c_bar[i].column(j))) / max_abs(&an_c).max(1.0);
            report.finite_difference.push(SlotResidual {
                pole: i,
                slot: j,
                residual: err_b.max(err_c),
            });
        }
        let rebuilt = &grad.c_bar[i] * &bf.c;
        report
            .c_bar_residue
            .push(max_abs(&(rebuilt - &barred_res[i])) / max_abs(&barred_res[i]).max(1.0));
    }
    if report.passes() {
        Ok(report)
    } else {
        Err(SchlesingerError::GradientMismatch(Box::new(report)))
    }
}
