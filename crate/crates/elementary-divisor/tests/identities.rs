use elementary_divisor::ElementaryDivisor;
use fuchsian_core::linalg::{dot, identity, max_abs};
use fuchsian_core::{c64, CRow, CVec, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(rng: &mut ChaCha8Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

struct Instance {
    d: ElementaryDivisor,
    v: CVec,
    w: CRow,
    x: C64,
}

fn instance(rng: &mut ChaCha8Rng, m: usize) -> Instance {
    loop {
        let f = CVec::from_fn(m, |_, _| unit(rng));
        let g = CRow::from_fn(m, |_, _| unit(rng));
        let z = unit(rng);
        let zeta = unit(rng);
        let x = unit(rng) * 2.0;
        if dot(&g, &f).norm() < 0.2 || (z - zeta).norm() < 0.2 || (x - z).norm() < 0.3 || (x - zeta).norm() < 0.3 {
            continue;
        }
        let d = ElementaryDivisor::new(z, zeta, f, g).unwrap();
        let v = CVec::from_fn(m, |_, _| unit(rng));
        let w = CRow::from_fn(m, |_, _| unit(rng));
        return Instance { d, v, w, x };
    }
}

#[test]
fn determinant_and_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..1000 {
        let m = 2 + k % 3;
        let Instance { d, x, .. } = instance(&mut rng, m);
        let r = d.eval(x).unwrap();
        let ri = d.eval_inverse(x).unwrap();
        assert!((r.determinant() - (x - d.zeta()) / (x - d.z())).norm() < 1e-10);
        assert!((ri.determinant() - (x - d.z()) / (x - d.zeta())).norm() < 1e-10);
        assert!(max_abs(&(&r * &ri - identity(m))) < 1e-12);
    }
}

#[test]
fn kernel_at_zero_and_pole() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let Instance { d, .. } = instance(&mut rng, 3);
        let degenerate = d.eval(d.zeta()).unwrap();
        assert!(max_abs(&(&degenerate * d.f())) < 1e-12);
        assert!(max_abs(&(d.g() * &degenerate)) < 1e-12);
        let inv_at_pole = d.eval_inverse(d.z()).unwrap();
        assert!(max_abs(&(&inv_at_pole * d.f())) < 1e-12);
        assert!(max_abs(&(d.g() * &inv_at_pole)) < 1e-12);
    }
}

#[test]
fn derivative_matches_central_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let h = c64(1e-6, 0.0);
    for _ in 0..100 {
        let Instance { d, x, .. } = instance(&mut rng, 3);
        let fd = (d.eval(x + h).unwrap() - d.eval(x - h).unwrap()) / (h * 2.0);
        let an = d.derivative(x).unwrap();
        assert!(max_abs(&(fd - &an)) < 1e-6);
        let log_trace = (an * d.eval_inverse(x).unwrap()).trace();
        let expected = C64::new(1.0, 0.0) / (x - d.zeta()) - C64::new(1.0, 0.0) / (x - d.z());
        assert!((log_trace - expected).norm() < 1e-12);
    }
}

#[test]
fn vanishing_rule_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let Instance { d, v, w, x } = instance(&mut rng, 3);
        assert!(d.check_vanishing_rule(&v, &w, x).unwrap() < 1e-10);
        assert!(d.check_vanishing_rule(d.f(), &w, x).unwrap() < 1e-10);
    }
}

#[test]
fn exchange_rule_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 0..1000 {
        let Instance { d, v, w, x } = instance(&mut rng, 2 + k % 3);
        assert!(d.check_exchange_rule(&v, &w, x).unwrap() < 1e-10);
    }
}

/// Holomorphic central differences of F = w R(x) v along each coordinate.
#[test]
fn gradient_blocks_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let h = 1e-6;
    for _ in 0..50 {
        let Instance { d, v, w, x } = instance(&mut rng, 3);
        let gr = d.gradients(&v, &w, x).unwrap();
        let rebuild = |f: &CVec, g: &CRow| ElementaryDivisor::new(d.z(), d.zeta(), f.clone(), g.clone()).unwrap();
        for k in 0..3 {
            let mut fp = d.f().clone();
            let mut fm = d.f().clone();
            fp[k] += h;
            fm[k] -= h;
            let fd = (rebuild(&fp, d.g()).pairing(&v, &w, x).unwrap()
                - rebuild(&fm, d.g()).pairing(&v, &w, x).unwrap())
                / (2.0 * h);
            assert!((fd - gr.df[k]).norm() < 1e-7);

            let mut gp = d.g().clone();
            let mut gm = d.g().clone();
            gp[k] += h;
            gm[k] -= h;
            let fd = (rebuild(d.f(), &gp).pairing(&v, &w, x).unwrap()
                - rebuild(d.f(), &gm).pairing(&v, &w, x).unwrap())
                / (2.0 * h);
            assert!((fd - gr.dg[k]).norm() < 1e-7);

            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[k] += h;
            vm[k] -= h;
            let fd = (d.pairing(&vp, &w, x).unwrap() - d.pairing(&vm, &w, x).unwrap()) / (2.0 * h);
            assert!((fd - gr.dv[k]).norm() < 1e-7);

            let mut wp = w.clone();
            let mut wm = w.clone();
            wp[k] += h;
            wm[k] -= h;
            let fd = (d.pairing(&v, &wp, x).unwrap() - d.pairing(&v, &wm, x).unwrap()) / (2.0 * h);
            assert!((fd - gr.dw[k]).norm() < 1e-7);
        }
    }
}
