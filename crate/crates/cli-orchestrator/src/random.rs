//! Seeded instance generators. Every value has |Re|, |Im| <= 1, poles are at
//! least 0.3 apart, and a draw that violates a guard is discarded and redrawn.

use fuchsian_core::linalg::{column, det, dot, inverse, row};
use fuchsian_core::{build_system, c64, decompose, CMat, CRow, CVec, FuchsianSystem, C64};
use painleve_a2star::{a2_orbit, a2_standard_step, to_standard as a2_to_standard, A2Parameters};
use painleve_d4::{dpv_orbit, DpvParameters, DpvState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schlesinger_map::TransformationIndex;

pub const POLE_SEPARATION: f64 = 0.3;

/// Independent stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn unit(rng: &mut impl Rng) -> C64 {
    c64(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// A dyadic value k/64 in [-1, 1]; sums of these are exact in binary.
pub fn dyadic(rng: &mut impl Rng) -> C64 {
    c64(
        rng.random_range(-64..=64) as f64 / 64.0,
        rng.random_range(-64..=64) as f64 / 64.0,
    )
}

fn separated(values: &[C64], gap: f64) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, a)| values[..i].iter().all(|b| (a - b).norm() >= gap))
}

pub struct DivisorInstance {
    pub z: C64,
    pub zeta: C64,
    pub f: CVec,
    pub g: CRow,
    pub v: CVec,
    pub w: CRow,
    pub x: C64,
}

/// Divisor data with g f, z - zeta and the evaluation point kept away from zero.
pub fn divisor_instance(rng: &mut impl Rng, m: usize) -> DivisorInstance {
    loop {
        let f = CVec::from_fn(m, |_, _| unit(rng));
        let g = CRow::from_fn(m, |_, _| unit(rng));
        let (z, zeta, x) = (unit(rng), unit(rng), unit(rng));
        if dot(&g, &f).norm() < 0.2 || !separated(&[z, zeta, x], POLE_SEPARATION) {
            continue;
        }
        let v = CVec::from_fn(m, |_, _| unit(rng));
        let w = CRow::from_fn(m, |_, _| unit(rng));
        return DivisorInstance { z, zeta, f, g, v, w, x };
    }
}

/// n poles, residues P diag(theta_1..theta_rank, 0, ..) P^{-1} with the nonzero
/// indices apart from each other, from 0 and from +-1, so that one step keeps
/// the spectral type.
pub fn raw_system(rng: &mut impl Rng, m: usize, n: usize, rank: usize) -> FuchsianSystem {
    let poles = loop {
        let p: Vec<C64> = (0..n).map(|_| unit(rng)).collect();
        if separated(&p, POLE_SEPARATION) {
            break p;
        }
    };
    let residues = (0..n)
        .map(|_| loop {
            let p = CMat::from_fn(m, m, |_, _| unit(rng));
            if det(&p).norm() < 0.1 {
                continue;
            }
            let th: Vec<C64> = (0..rank).map(|_| unit(rng)).collect();
            let mut marks = th.clone();
            marks.extend(th.iter().map(|t| t - 1.0));
            marks.push(c64(0.0, 0.0));
            if !separated(&marks, 0.1) || th.iter().any(|t| (t + 1.0).norm() < 0.1) {
                continue;
            }
            let d = CMat::from_fn(m, m, |i, j| if i == j && i < rank { th[i] } else { c64(0.0, 0.0) });
            break &p * d * inverse(&p).expect("det checked");
        })
        .collect();
    build_system(poles, residues).expect("generated residues are diagonalizable")
}

/// A system and an index {alpha beta; mu nu} with the relative pairing
/// |c_alpha^mu b_(beta,nu)| / (|c| |b|) above 0.1.
pub fn raw_case(rng: &mut impl Rng, m: usize, n: usize, rank: usize) -> (FuchsianSystem, TransformationIndex) {
    loop {
        let s = raw_system(rng, m, n, rank);
        let alpha = rng.random_range(0..n);
        let beta = (alpha + rng.random_range(1..n)) % n;
        let idx = TransformationIndex::new(alpha, beta, rng.random_range(0..rank), rng.random_range(0..rank));
        let Ok(p) = decompose(&s) else { continue };
        let f = column(&p.factors[idx.beta].b, idx.nu);
        let g = row(&p.factors[idx.alpha].c, idx.mu);
        if dot(&g, &f).norm() > 0.1 * g.norm() * f.norm() {
            return (s, idx);
        }
    }
}

/// Parameters, (p, q) and t with every denominator of the step and of the
/// chart above 0.2 at each point of an orbit of `steps` steps.
pub fn dpv_instance(rng: &mut impl Rng, steps: usize) -> (DpvParameters, DpvState) {
    dpv_instance_counted(rng, steps).0
}

/// As `dpv_instance`, also returning the number of rejected draws.
pub fn dpv_instance_counted(rng: &mut impl Rng, steps: usize) -> ((DpvParameters, DpvState), usize) {
    let mut rejected = 0;
    loop {
        let [theta1, thetat, kappa1, kappa2, t] = [(); 5].map(|_| unit(rng));
        let state = DpvState {
            p: unit(rng),
            q: unit(rng),
        };
        if separated(&[c64(0.0, 0.0), c64(1.0, 0.0), t], POLE_SEPARATION) {
            if let Ok(params) = DpvParameters::from_free(theta1, thetat, kappa1, kappa2, t) {
                if dpv_guarded(&params, &state) {
                    if let Ok(o) = dpv_orbit(&params, &state, steps) {
                        if o.halt.is_none() && o.rows.iter().all(|r| dpv_guarded(&r.params, &r.state)) {
                            return ((params, state), rejected);
                        }
                    }
                }
            }
        }
        rejected += 1;
    }
}

fn dpv_guarded(params: &DpvParameters, state: &DpvState) -> bool {
    let DpvState { p, q } = *state;
    let c = (params.theta1 + params.kappa2) / p;
    [
        p,
        q,
        q - params.t - c,
        q - 1.0 - c,
        1.0 - q / params.t,
        params.theta1 + params.kappa2 - p * q,
        params.kappa1 - params.kappa2,
    ]
    .iter()
    .all(|d| d.norm() > 0.2)
}

/// Exponents drawn from `draw`, kept apart modulo the unit shifts the steps
/// apply, and a chart point away from the standard-form poles, with an orbit
/// of `steps` composite steps that completes.
pub fn a2_instance_with<R: Rng>(rng: &mut R, steps: usize, draw: fn(&mut R) -> C64) -> (A2Parameters, C64, C64) {
    loop {
        let [t11, t12, t21, t22, k1, k2] = [(); 6].map(|_| draw(rng));
        let Ok(params) = A2Parameters::from_free(t11, t12, t21, t22, k1, k2) else {
            continue;
        };
        let k = params.kappa;
        if k[2].re.abs() > 1.0 || k[2].im.abs() > 1.0 {
            continue;
        }
        let shifted = [
            t11,
            t12,
            t21,
            t22,
            t11 - 1.0,
            t12 + 1.0,
            t21 + 1.0,
            t22 + 1.0,
            c64(0.0, 0.0),
        ];
        if !separated(&shifted, 0.15) || !separated(&k, 0.15) || !separated(&[k[0] + 1.0, k[1], k[2]], 0.15) {
            continue;
        }
        let (x, y) = (draw(rng), draw(rng));
        if !a2_guarded(&params, x, y) {
            continue;
        }
        match a2_orbit(&params, x, y, steps) {
            Ok(o) if o.halt.is_none() => return (params, x, y),
            _ => continue,
        }
    }
}

pub fn a2_instance(rng: &mut ChaCha8Rng, steps: usize) -> (A2Parameters, C64, C64) {
    a2_instance_with(rng, steps, unit)
}

fn a2_guarded(params: &A2Parameters, x: C64, y: C64) -> bool {
    let Ok((sp, f, g)) = a2_to_standard(params, x, y) else {
        return false;
    };
    if (f + g).norm() < 0.2 || (x - y - params.theta21).norm() < 0.2 || f.norm() > 20.0 || g.norm() > 20.0 {
        return false;
    }
    let Ok((_, f1, g1)) = a2_standard_step(&sp, f, g) else {
        return false;
    };
    (f1 + g).norm() >= 0.1 && f1.norm() <= 50.0 && g1.norm() <= 50.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<f64> = (0..4).map(|_| trial_rng(5, 3).random()).collect();
        let b: Vec<f64> = (0..4).map(|_| trial_rng(5, 3).random()).collect();
        assert_eq!(a, b);
        assert_ne!(trial_rng(5, 3).random::<u64>(), trial_rng(5, 4).random::<u64>());
    }

    #[test]
    fn ranges_and_separation() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            let s = raw_system(&mut rng, 3, 3, 2);
            assert!(s.poles().iter().all(|p| p.re.abs() <= 1.0 && p.im.abs() <= 1.0));
            assert!(separated(s.poles(), POLE_SEPARATION));
        }
        let (params, state) = dpv_instance(&mut rng, 5);
        for z in [
            params.theta1,
            params.thetat,
            params.kappa1,
            params.kappa2,
            params.t,
            state.p,
            state.q,
        ] {
            assert!(z.re.abs() <= 1.0 && z.im.abs() <= 1.0);
        }
    }
}
