mod common;

use common::{random_case, random_system, unit};
use fuchsian_core::linalg::{column, max_abs, row};
use fuchsian_core::{decompose, default_labels, riemann_scheme, Tolerances, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schlesinger_map::{
    orbit, orthogonality_residual, residue_equation_residual, transform_decomposition, transform_system_labelled,
    TransformationIndex,
};

fn shapes() -> Vec<(usize, usize, usize)> {
    // (m, n, rank)
    vec![
        (2, 3, 2),
        (2, 3, 1),
        (3, 2, 3),
        (3, 3, 2),
        (4, 2, 3),
        (4, 4, 2),
        (2, 4, 2),
    ]
}

#[test]
fn residue_equation_and_determinant() {
    let tol = Tolerances::default();
    for (k, (m, n, rank)) in shapes().into_iter().enumerate() {
        for trial in 0..20u64 {
            let seed = 1000 * k as u64 + trial;
            let (s, idx) = random_case(seed, m, n, rank);
            let labels = default_labels(&s, tol.cluster).unwrap();
            let (t, _, r) = transform_system_labelled(&s, &labels, &idx, &tol).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<C64> = (0..10).map(|_| unit(&mut rng) * 3.0 + 0.05).collect();
            assert!(residue_equation_residual(&s, &t, &r, &samples).unwrap() < 1e-9);
            for &x in &samples {
                let expected = (x - s.poles()[idx.beta]) / (x - s.poles()[idx.alpha]);
                assert!((r.eval(x).unwrap().determinant() - expected).norm() < 1e-10 * expected.norm().max(1.0));
            }
            assert!(max_abs(&(t.residue_at_infinity() - s.residue_at_infinity())) < 1e-10);
        }
    }
}

#[test]
fn scheme_shifts_exactly_two_indices() {
    let tol = Tolerances::default();
    for (k, (m, n, rank)) in shapes().into_iter().enumerate() {
        for trial in 0..10u64 {
            let seed = 2000 + 1000 * k as u64 + trial;
            let (s, idx) = random_case(seed, m, n, rank);
            let labels = default_labels(&s, tol.cluster).unwrap();
            let (t, new_labels, _) = transform_system_labelled(&s, &labels, &idx, &tol).unwrap();
            let mut expected = labels.clone();
            expected[idx.alpha][idx.mu] -= 1.0;
            expected[idx.beta][idx.nu] += 1.0;
            assert_eq!(new_labels, expected);
            // the numerical spectrum of the new residues is the shifted multiset
            let scheme = riemann_scheme(&t, tol.cluster).unwrap();
            for (got, want) in scheme.finite.iter().zip(&expected) {
                let mut want = want.clone();
                want.sort_by(fuchsian_core::linalg::cmp_complex);
                assert_eq!(got.len(), want.len());
                for (a, b) in got.iter().zip(&want) {
                    assert!((a - b).norm() < 1e-8);
                }
            }
            assert!(scheme.fuchs_sum().norm() < 1e-10);
            let before = s.residues().iter().map(|a| a.trace()).collect::<Vec<_>>();
            let after = t.residues().iter().map(|a| a.trace()).collect::<Vec<_>>();
            assert!((after[idx.alpha] - before[idx.alpha] + 1.0).norm() < 1e-10);
            assert!((after[idx.beta] - before[idx.beta] - 1.0).norm() < 1e-10);
        }
    }
}

#[test]
fn decomposition_lift_matches_system_step() {
    let tol = Tolerances::default();
    for (k, (m, n, rank)) in shapes().into_iter().enumerate() {
        for trial in 0..20u64 {
            let seed = 5000 + 1000 * k as u64 + trial;
            let (s, idx) = random_case(seed, m, n, rank);
            let p = decompose(&s).unwrap();
            let (pb, r) = transform_decomposition(&p, &idx).unwrap();
            // absolute errors scale with the size of the factors
            let scale = pb
                .factors
                .iter()
                .map(|f| max_abs(&f.b) * max_abs(&f.c))
                .fold(1.0, f64::max);
            pb.check(1e-11 * scale).unwrap();
            for (i, f) in pb.factors.iter().enumerate() {
                let res = max_abs(&(&f.c * &f.b - f.theta_matrix()));
                if i == idx.alpha || i == idx.beta {
                    // rebuilt slots: relative to the size of the factors
                    assert!(res < 1e-12 * max_abs(&f.c) * max_abs(&f.b));
                } else {
                    assert!(res < 1e-10);
                }
            }
            let labels = default_labels(&s, tol.cluster).unwrap();
            let (t, _, _) = transform_system_labelled(&s, &labels, &idx, &tol).unwrap();
            for (a, b) in t.residues().iter().zip(pb.residues()) {
                assert!(max_abs(&(a - b)) < 1e-11 * scale);
            }
            // kernel facts at u_beta
            let rb = r.eval(p.poles[idx.beta]).unwrap();
            assert!(max_abs(&(&rb * column(&p.factors[idx.beta].b, idx.nu))) < 1e-10);
            assert!(max_abs(&(row(&pb.factors[idx.beta].c, idx.nu) * &rb)) < 1e-9);
            assert!(orthogonality_residual(&p, &pb, &idx) < 1e-9);
        }
    }
}

#[test]
fn orbit_inverse_pair_returns() {
    let s = random_system(77, 3, 3, 2);
    let idx = TransformationIndex::new(0, 2, 1, 0);
    let records = orbit(&s, &[idx, idx.reverse()], 2).unwrap();
    assert_eq!(records.len(), 3);
    for (a, b) in s.residues().iter().zip(records[2].system.residues()) {
        assert!(max_abs(&(a - b)) < 1e-9);
    }
    assert_eq!(orbit(&s, &[idx], 0).unwrap().len(), 1);
}

#[test]
fn repeated_step_shifts_by_k() {
    let s = random_system(78, 2, 3, 2);
    let idx = TransformationIndex::new(1, 2, 0, 1);
    let records = orbit(&s, &[idx], 4).unwrap();
    let start = &records[0].labels;
    for r in &records {
        let k = r.step as f64;
        assert!((r.labels[1][0] - (start[1][0] - k)).norm() < 1e-14);
        assert!((r.labels[2][1] - (start[2][1] + k)).norm() < 1e-14);
        assert!(r.scheme.fuchs_sum().norm() < 1e-10);
    }
}
