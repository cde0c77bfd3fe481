use picard_lattice::*;

#[test]
fn pairing_conventions() {
    let b = LatticeBasis::p1xp1(8);
    let hf = b.class(&[("H_f", 1)]).unwrap();
    let hg = b.class(&[("H_g", 1)]).unwrap();
    let e3 = b.class(&[("E_3", 1)]).unwrap();
    assert_eq!(b.pair(&hf, &hg).unwrap(), 1);
    assert_eq!(b.pair(&hf, &hf).unwrap(), 0);
    assert_eq!(b.pair(&e3, &e3).unwrap(), -1);
    let p2 = LatticeBasis::p2(9);
    let e = p2.class(&[("E", 1)]).unwrap();
    assert_eq!(p2.pair(&e, &e).unwrap(), 1);
    assert!(matches!(
        b.pair(&hf, &LatticeClass::new(vec![1; 3])),
        Err(LatticeError::BasisMismatch(..))
    ));
    assert!(matches!(b.class(&[("E_9", 1)]), Err(LatticeError::UnknownLabel(_))));
}

#[test]
fn anticanonical_classes_are_isotropic() {
    for s in [dpv_standard_surface(), a2_standard_surface(), a2_p2_surface()] {
        assert_eq!(s.basis.pair(&s.minus_k, &s.minus_k).unwrap(), 0, "{}", s.name);
    }
    // ten blow-ups of P1 x P1: K^2 = 8 - 10
    let s = dpv_pq_surface();
    assert_eq!(s.basis.pair(&s.minus_k, &s.minus_k).unwrap(), -2);
}

#[test]
fn anticanonical_decompositions() {
    let d = dpv_standard_surface();
    assert!(d
        .basis
        .verify_anticanonical_decomposition(&d.minus_k, &d.components)
        .unwrap()
        .is_empty());
    let wrong: Vec<_> = d.components.iter().map(|(c, _)| (c.clone(), 1)).collect();
    assert!(!d
        .basis
        .verify_anticanonical_decomposition(&d.minus_k, &wrong)
        .unwrap()
        .is_empty());
    for s in [a2_standard_surface(), a2_p2_surface()] {
        assert!(
            s.basis
                .verify_anticanonical_decomposition(&s.minus_k, &s.components)
                .unwrap()
                .is_empty(),
            "{}",
            s.name
        );
    }
}

#[test]
fn blowdown_structures() {
    for s in [dpv_pq_surface(), a2_p2_surface()] {
        let bd = s.blowdown.as_ref().unwrap();
        let issues = s
            .basis
            .verify_blowdown_structure(&s.minus_k, &bd.h_f, &bd.h_g, &bd.exceptional)
            .unwrap();
        assert!(issues.is_empty(), "{}: {issues:?}", s.name);
    }
    let s = dpv_pq_surface();
    let bd = s.blowdown.unwrap();
    let mut bad = bd.exceptional.clone();
    bad[0] = s.basis.class(&[("H_q", 1)]).unwrap();
    assert!(!s
        .basis
        .verify_blowdown_structure(&s.minus_k, &bd.h_f, &bd.h_g, &bad)
        .unwrap()
        .is_empty());
}

#[test]
fn blowdown_matches_the_components() {
    // D_i of the P2 surface in the new basis are the standard D_i
    let p2 = a2_p2_surface();
    let bd = p2.blowdown.as_ref().unwrap();
    let e = &bd.exceptional;
    let d0 = bd
        .h_f
        .add(&bd.h_g)
        .unwrap()
        .sub(&e[0])
        .unwrap()
        .sub(&e[1])
        .unwrap()
        .sub(&e[2])
        .unwrap()
        .sub(&e[3])
        .unwrap();
    let d1 = bd.h_f.sub(&e[4]).unwrap().sub(&e[5]).unwrap();
    let d2 = bd.h_g.sub(&e[6]).unwrap().sub(&e[7]).unwrap();
    assert_eq!(d0, p2.components[0].0);
    assert_eq!(d1, p2.components[1].0);
    assert_eq!(d2, p2.components[2].0);
}

#[test]
fn actions_are_isometries_fixing_minus_k() {
    for s in [dpv_standard_surface(), a2_standard_surface()] {
        for (name, a) in &s.actions {
            assert!(a.fixes(&s.minus_k).unwrap(), "{} {name}", s.name);
            let images: Vec<_> = (0..s.basis.rank())
                .map(|j| a.apply(&s.basis.generator(j)).unwrap())
                .collect();
            assert_eq!(&build_action(&s.basis, &images).unwrap(), a);
        }
    }
}

#[test]
fn non_isometry_is_rejected() {
    let b = LatticeBasis::p1xp1(8);
    let mut images: Vec<_> = (0..10).map(|j| b.generator(j)).collect();
    images[0] = b.class(&[("H_f", 2)]).unwrap();
    assert_eq!(build_action(&b, &images), Err(LatticeError::NotIsometry));
    assert!(matches!(
        build_action(&b, &images[..3]),
        Err(LatticeError::WrongImageCount { .. })
    ));
}

#[test]
fn translation_vectors() {
    let d = dpv_standard_surface();
    assert_eq!(d.translations().unwrap(), vec![("phi", vec![0, 0, 1, -1, -1])]);
    let a = a2_standard_surface();
    let t = a.translations().unwrap();
    assert_eq!(t[0], ("phi", vec![0, 0, 0, 1, 0, -1, 0]));
    assert_eq!(t[1], ("psi", vec![0, 0, 0, -1, 1, 1, -1]));
    // different directions
    let (u, v) = (&t[0].1, &t[1].1);
    let proportional = (0..u.len()).all(|i| (0..u.len()).all(|j| u[i] * v[j] == u[j] * v[i]));
    assert!(!proportional);
}

#[test]
fn translation_errors() {
    let d = dpv_standard_surface();
    let (_, phi) = &d.actions[0];
    // H_f is not fixed by phi
    let hf = d.basis.class(&[("H_f", 1)]).unwrap();
    assert_eq!(translation_vector(phi, &d.roots, &hf), Err(LatticeError::DeltaNotFixed));
    // a swap E_1 <-> E_2 fixes -K but reflects alpha_0
    let mut images: Vec<_> = (0..10).map(|j| d.basis.generator(j)).collect();
    images.swap(2, 3);
    let swap = build_action(&d.basis, &images).unwrap();
    assert_eq!(
        translation_vector(&swap, &d.roots, &d.minus_k),
        Err(LatticeError::NotTranslation { index: 0 })
    );
}

#[test]
fn root_systems() {
    let d = dpv_standard_surface();
    let c = cartan_matrix(&d.basis, &d.roots).unwrap();
    assert_eq!(affine_type(&c).as_deref(), Some("D4(1)"));
    let a = a2_standard_surface();
    let c = cartan_matrix(&a.basis, &a.roots).unwrap();
    assert_eq!(affine_type(&c).as_deref(), Some("E6(1)"));
    // roots are orthogonal to -K and to every component
    for s in [&d, &a] {
        for r in &s.roots {
            assert_eq!(s.basis.pair(r, &s.minus_k).unwrap(), 0);
            for (comp, _) in &s.components {
                assert_eq!(s.basis.pair(r, comp).unwrap(), 0);
            }
        }
    }
}

#[test]
fn overflow_is_an_error() {
    let b = LatticeBasis::p1xp1(1);
    let big = LatticeClass::new(vec![i64::MAX, 1, 0]);
    assert_eq!(b.pair(&big, &big), Err(LatticeError::Overflow));
    assert_eq!(big.scale(2), Err(LatticeError::Overflow));
}

#[test]
fn json_dump() {
    let v = a2_standard_surface().to_json();
    assert_eq!(v["basis"][0], "H_f");
    assert_eq!(v["gram"][0][1], 1);
    assert_eq!(
        v["classes"]["alpha_3"],
        serde_json::json!([1, 0, -1, 0, 0, 0, 0, 0, -1, 0])
    );
    assert_eq!(v["actions"]["psi"].as_array().unwrap().len(), 10);
}
