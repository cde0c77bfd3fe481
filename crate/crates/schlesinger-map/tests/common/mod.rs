#![allow(dead_code)]

use fuchsian_core::linalg::{det, inverse};
use fuchsian_core::{build_system, c64, CMat, FuchsianSystem, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schlesinger_map::TransformationIndex;

pub fn unit(rng: &mut impl Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random system whose residues have `rank` nonzero, well separated indices.
pub fn random_system(seed: u64, m: usize, n: usize, rank: usize) -> FuchsianSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poles = loop {
        let p: Vec<C64> = (0..n).map(|_| unit(&mut rng) * 2.0).collect();
        if (0..n).all(|i| (i + 1..n).all(|j| (p[i] - p[j]).norm() >= 0.3)) {
            break p;
        }
    };
    let residues = (0..n)
        .map(|_| loop {
            let p = CMat::from_fn(m, m, |_, _| unit(&mut rng));
            if det(&p).norm() < 0.1 {
                continue;
            }
            let th: Vec<C64> = (0..rank).map(|_| unit(&mut rng)).collect();
            let separated = th.iter().enumerate().all(|(i, a)| {
                a.norm() > 0.1
                    && (a - 1.0).norm() > 0.1
                    && (a + 1.0).norm() > 0.1
                    && th[..i]
                        .iter()
                        .all(|b| (a - b).norm() > 0.1 && (a - b - 1.0).norm() > 0.1 && (b - a - 1.0).norm() > 0.1)
            });
            if !separated {
                continue;
            }
            let d = CMat::from_fn(m, m, |i, j| if i == j && i < rank { th[i] } else { c64(0.0, 0.0) });
            break &p * d * inverse(&p).unwrap();
        })
        .collect();
    build_system(poles, residues).expect("valid random system")
}

pub fn random_index(seed: u64, n: usize, rank: usize) -> TransformationIndex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(7919));
    let alpha = rng.random_range(0..n);
    let beta = (alpha + rng.random_range(1..n)) % n;
    TransformationIndex::new(alpha, beta, rng.random_range(0..rank), rng.random_range(0..rank))
}

/// A system and index away from the base locus of the step: the relative
/// pairing |c_alpha^mu b_(beta,nu)| / (|c| |b|) is kept above 0.1.
pub fn random_case(seed: u64, m: usize, n: usize, rank: usize) -> (FuchsianSystem, TransformationIndex) {
    use fuchsian_core::decompose;
    use fuchsian_core::linalg::{column, dot, row};
    let mut k = seed;
    loop {
        let s = random_system(k, m, n, rank);
        let idx = random_index(k, n, rank);
        let p = decompose(&s).unwrap();
        let f = column(&p.factors[idx.beta].b, idx.nu);
        let g = row(&p.factors[idx.alpha].c, idx.mu);
        if dot(&g, &f).norm() > 0.1 * g.norm() * f.norm() {
            return (s, idx);
        }
        k = k.wrapping_add(1 << 32);
    }
}
