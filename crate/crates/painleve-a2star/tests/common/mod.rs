#![allow(dead_code)]

use fuchsian_core::{c64, C64};
use painleve_a2star::{a2_standard_step, composite_step, to_standard, A2Parameters};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit(rng: &mut impl Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn separated(values: &[C64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, a)| values[..i].iter().all(|b| (a - b).norm() > 0.15))
}

/// Random parameters and chart point with exponents and kappa well separated
/// (also modulo the unit shifts the steps apply) and the chart away from the
/// lines where a denominator vanishes.
pub fn random_instance(seed: u64) -> (A2Parameters, C64, C64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let [t11, t12, t21, t22, k1, k2] = [(); 6].map(|_| unit(&mut rng));
        let Ok(params) = A2Parameters::from_free(t11, t12, t21, t22, k1, k2) else {
            continue;
        };
        let k = params.kappa;
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
        if !separated(&shifted) || !separated(&[k[0], k[1], k[2]]) || !separated(&[k[0] + 1.0, k[1], k[2]]) {
            continue;
        }
        let (x, y) = (unit(&mut rng), unit(&mut rng));
        if !guarded(&params, x, y) {
            continue;
        }
        return (params, x, y);
    }
}

fn guarded(params: &A2Parameters, x: C64, y: C64) -> bool {
    let Ok((_, f, g)) = to_standard(params, x, y) else {
        return false;
    };
    if (f + g).norm() < 0.2 || (x - y - params.theta21).norm() < 0.2 || f.norm() > 20.0 || g.norm() > 20.0 {
        return false;
    }
    let Ok(sp) = to_standard(params, x, y) else {
        return false;
    };
    let Ok((_, f1, g1)) = a2_standard_step(&sp.0, f, g) else {
        return false;
    };
    if (f1 + g).norm() < 0.1 || f1.norm() > 50.0 || g1.norm() > 50.0 {
        return false;
    }
    composite_step(params, x, y).is_ok()
}

/// Real parameters and chart point, so every pairing is real.
pub fn random_real_instance(seed: u64) -> (A2Parameters, C64, C64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let [t11, t12, t21, t22, k1, k2] = [(); 6].map(|_| c64(rng.random_range(-1.0..1.0), 0.0));
        let Ok(params) = A2Parameters::from_free(t11, t12, t21, t22, k1, k2) else {
            continue;
        };
        if !separated(&[t11, t12, t21, t22, t11 - 1.0, t21 + 1.0, c64(0.0, 0.0)]) {
            continue;
        }
        let (x, y) = (
            c64(rng.random_range(-1.0..1.0), 0.0),
            c64(rng.random_range(-1.0..1.0), 0.0),
        );
        if guarded(&params, x, y) {
            return (params, x, y);
        }
    }
}
