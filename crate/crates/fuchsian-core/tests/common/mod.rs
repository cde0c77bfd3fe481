use fuchsian_core::linalg::{det, inverse};
use fuchsian_core::{build_system, c64, CMat, FuchsianSystem, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit(rng: &mut ChaCha8Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random diagonalizable system: A_i = P diag(theta, 0, .., 0) P^-1 with
/// well-separated poles and reasonably conditioned P.
pub fn random_system(seed: u64, m: usize, n: usize) -> FuchsianSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poles = loop {
        let p: Vec<C64> = (0..n).map(|_| unit(&mut rng) * 2.0).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (p[i] - p[j]).norm() >= 0.3));
        if ok {
            break p;
        }
    };
    let residues = (0..n)
        .map(|_| {
            let r = rng.random_range(1..=m);
            loop {
                let p = CMat::from_fn(m, m, |_, _| unit(&mut rng));
                if det(&p).norm() < 0.05 {
                    continue;
                }
                let d = CMat::from_fn(
                    m,
                    m,
                    |i, j| if i == j && i < r { unit(&mut rng) } else { c64(0.0, 0.0) },
                );
                if (0..r).any(|i| d[(i, i)].norm() < 0.05) {
                    continue;
                }
                break &p * d * inverse(&p).unwrap();
            }
        })
        .collect();
    build_system(poles, residues).expect("random system is valid")
}
