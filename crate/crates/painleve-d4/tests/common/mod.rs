#![allow(dead_code)]

use fuchsian_core::{c64, C64};
use painleve_d4::{DpvParameters, DpvState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit(rng: &mut impl Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random parameters and (p, q) with t away from 0 and 1 and the step's
/// denominators away from zero.
pub fn random_instance(seed: u64) -> (DpvParameters, DpvState) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let [theta1, thetat, kappa1, kappa2] = [(); 4].map(|_| unit(&mut rng));
        let t = unit(&mut rng) + 2.0;
        let params = DpvParameters::from_free(theta1, thetat, kappa1, kappa2, t).unwrap();
        let state = DpvState {
            p: unit(&mut rng),
            q: unit(&mut rng),
        };
        if guarded(&params, &state) {
            return (params, state);
        }
    }
}

/// Real parameters and coordinates, so every pairing is real.
pub fn random_real_instance(seed: u64) -> (DpvParameters, DpvState) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let [theta1, thetat, kappa1, kappa2] = [(); 4].map(|_| c64(rng.random_range(-1.0..1.0), 0.0));
        let t = c64(rng.random_range(2.0..3.0), 0.0);
        let params = DpvParameters::from_free(theta1, thetat, kappa1, kappa2, t).unwrap();
        let state = DpvState {
            p: c64(rng.random_range(-1.0..1.0), 0.0),
            q: c64(rng.random_range(-1.0..1.0), 0.0),
        };
        if guarded(&params, &state) {
            return (params, state);
        }
    }
}

fn guarded(params: &DpvParameters, state: &DpvState) -> bool {
    let DpvState { p, q } = *state;
    let c = (params.theta1 + params.kappa2) / p;
    let a_t = q / params.t;
    [
        p,
        q,
        q - params.t - c,
        q - 1.0 - c,
        1.0 - a_t,
        params.theta1 + params.kappa2 - p * q,
        params.kappa1 - params.kappa2,
    ]
    .iter()
    .all(|d| d.norm() > 0.2)
}
