//! Lattice data of the two surfaces, transcribed generator by generator.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::{build_action, translation_vector, LatticeAction, LatticeBasis, LatticeClass, LatticeError};

type Terms<'a> = &'a [(&'a str, i64)];

#[derive(Debug, Clone, PartialEq)]
pub struct Blowdown {
    pub h_f: LatticeClass,
    pub h_g: LatticeClass,
    pub exceptional: Vec<LatticeClass>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub name: &'static str,
    pub basis: LatticeBasis,
    pub minus_k: LatticeClass,
    /// (-2)-components of -K with multiplicities.
    pub components: Vec<(LatticeClass, i64)>,
    /// Simple roots alpha_0.. of the symmetry sublattice.
    pub roots: Vec<LatticeClass>,
    pub blowdown: Option<Blowdown>,
    pub actions: Vec<(&'static str, LatticeAction)>,
}

fn classes(basis: &LatticeBasis, list: &[Terms]) -> Vec<LatticeClass> {
    list.iter()
        .map(|t| basis.class(t).expect("static lattice data"))
        .collect()
}

fn minus_k_p1xp1(basis: &LatticeBasis) -> LatticeClass {
    let mut c = vec![-1; basis.rank()];
    c[0] = 2;
    c[1] = 2;
    LatticeClass::new(c)
}

fn action(basis: &LatticeBasis, images: &[Terms]) -> LatticeAction {
    build_action(basis, &classes(basis, images)).expect("static action is an isometry")
}

/// Standard d-PV surface: P1 x P1 blown up at eight points, type D4(1).
pub fn dpv_standard_surface() -> Surface {
    let b = LatticeBasis::p1xp1(8);
    let e1234 = [("E_1", -1), ("E_2", -1), ("E_3", -1), ("E_4", -1)];
    let with = |extra: &[(&'static str, i64)]| -> Vec<(&'static str, i64)> {
        let mut v = vec![("H_f", 2), ("H_g", 1)];
        v.extend_from_slice(&e1234);
        v.extend_from_slice(extra);
        v
    };
    let (i5, i6, i7, i8) = (
        with(&[("E_8", -1)]),
        with(&[("E_7", -1)]),
        with(&[("E_6", -1)]),
        with(&[("E_5", -1)]),
    );
    let phi = action(
        &b,
        &[
            &[
                ("H_f", 5),
                ("H_g", 2),
                ("E_1", -2),
                ("E_2", -2),
                ("E_3", -2),
                ("E_4", -2),
                ("E_5", -1),
                ("E_6", -1),
                ("E_7", -1),
                ("E_8", -1),
            ],
            &[
                ("H_f", 2),
                ("H_g", 1),
                ("E_1", -1),
                ("E_2", -1),
                ("E_3", -1),
                ("E_4", -1),
            ],
            &[("H_f", 1), ("E_2", -1)],
            &[("H_f", 1), ("E_1", -1)],
            &[("H_f", 1), ("E_4", -1)],
            &[("H_f", 1), ("E_3", -1)],
            &i5,
            &i6,
            &i7,
            &i8,
        ],
    );
    let components = classes(
        &b,
        &[
            &[("H_g", 1), ("E_1", -1), ("E_2", -1)],
            &[("H_g", 1), ("E_3", -1), ("E_4", -1)],
            &[("H_f", 1), ("E_5", -1), ("E_6", -1)],
            &[("E_5", 1), ("E_7", -1)],
            &[("E_6", 1), ("E_8", -1)],
        ],
    );
    let roots = classes(
        &b,
        &[
            &[("E_1", 1), ("E_2", -1)],
            &[("E_3", 1), ("E_4", -1)],
            &[("H_f", 1), ("E_1", -1), ("E_3", -1)],
            &[("H_g", 1), ("E_5", -1), ("E_7", -1)],
            &[("H_g", 1), ("E_6", -1), ("E_8", -1)],
        ],
    );
    Surface {
        name: "d-PV standard",
        minus_k: minus_k_p1xp1(&b),
        components: components.into_iter().zip([1, 1, 2, 1, 1]).collect(),
        roots,
        blowdown: None,
        actions: vec![("phi", phi)],
        basis: b,
    }
}

/// The (p, q) surface of the Schlesinger step: P1 x P1 blown up ten times,
/// with the blow-down structure onto the standard d-PV surface.
pub fn dpv_pq_surface() -> Surface {
    let labels = [
        "H_p", "H_q", "F_1", "F_2", "F_2'", "F_3", "F_4", "F_4'", "F_5", "F_6", "F_7", "F_8",
    ];
    let b = LatticeBasis::blowup(labels.iter().map(|s| s.to_string()).collect(), 2, &[[0, 1], [1, 0]]);
    let exceptional = classes(
        &b,
        &[
            &[("H_p", 1), ("H_q", 1), ("F_1", -1), ("F_3", -1), ("F_4'", -1)],
            &[("F_2", 1)],
            &[("H_p", 1), ("F_3", -1)],
            &[("F_4", 1)],
            &[("F_5", 1)],
            &[("F_6", 1)],
            &[("F_7", 1)],
            &[("F_8", 1)],
            &[("F_2'", 1)],
            &[("H_q", 1), ("F_3", -1)],
        ],
    );
    let h = classes(
        &b,
        &[
            &[("H_p", 1), ("H_q", 1), ("F_1", -1), ("F_3", -1)],
            &[("H_p", 1), ("H_q", 1), ("F_3", -1), ("F_4'", -1)],
        ],
    );
    Surface {
        name: "d-PV Schlesinger",
        minus_k: minus_k_p1xp1(&b),
        components: Vec::new(),
        roots: Vec::new(),
        blowdown: Some(Blowdown {
            h_f: h[0].clone(),
            h_g: h[1].clone(),
            exceptional,
        }),
        actions: Vec::new(),
        basis: b,
    }
}

/// Standard d-P(A2*) surface with the standard map phi and the Schlesinger
/// step psi written in the same basis, type E6(1).
pub fn a2_standard_surface() -> Surface {
    let b = LatticeBasis::p1xp1(8);
    let all_but =
        |skip: &str, base: [(&'static str, i64); 2], extra: &[(&'static str, i64)]| -> Vec<(&'static str, i64)> {
            let mut v: Vec<(&'static str, i64)> = base.to_vec();
            v.extend(
                ["E_1", "E_2", "E_3", "E_4"]
                    .into_iter()
                    .filter(|l| *l != skip)
                    .map(|l| (l, -1)),
            );
            v.extend_from_slice(extra);
            v
        };
    let e78 = [("E_7", -1), ("E_8", -1)];
    let phi_e: Vec<Vec<(&str, i64)>> = ["E_1", "E_2", "E_3", "E_4"]
        .iter()
        .map(|s| all_but(s, [("H_f", 2), ("H_g", 1)], &e78))
        .collect();
    let phi_5 = all_but("", [("H_f", 3), ("H_g", 1)], &[("E_6", -1), ("E_7", -1), ("E_8", -1)]);
    let phi_6 = all_but("", [("H_f", 3), ("H_g", 1)], &[("E_5", -1), ("E_7", -1), ("E_8", -1)]);
    let phi = action(
        &b,
        &[
            &[
                ("H_f", 6),
                ("H_g", 3),
                ("E_1", -2),
                ("E_2", -2),
                ("E_3", -2),
                ("E_4", -2),
                ("E_5", -1),
                ("E_6", -1),
                ("E_7", -3),
                ("E_8", -3),
            ],
            &all_but("", [("H_f", 3), ("H_g", 1)], &e78),
            &phi_e[0],
            &phi_e[1],
            &phi_e[2],
            &phi_e[3],
            &phi_5,
            &phi_6,
            &[("H_f", 1), ("E_8", -1)],
            &[("H_f", 1), ("E_7", -1)],
        ],
    );
    let e58 = [("E_5", -1), ("E_8", -1)];
    let psi_e: Vec<Vec<(&str, i64)>> = ["E_1", "E_2", "E_3", "E_4"]
        .iter()
        .map(|s| all_but(s, [("H_f", 1), ("H_g", 2)], &e58))
        .collect();
    let psi = action(
        &b,
        &[
            &all_but("", [("H_f", 2), ("H_g", 3)], &[("E_5", -2), ("E_8", -2)]),
            &[
                ("H_f", 3),
                ("H_g", 5),
                ("E_1", -2),
                ("E_2", -2),
                ("E_3", -2),
                ("E_4", -2),
                ("E_5", -3),
                ("E_6", -1),
                ("E_8", -2),
            ],
            &psi_e[0],
            &psi_e[1],
            &psi_e[2],
            &psi_e[3],
            &[("E_7", 1)],
            &all_but("", [("H_f", 2), ("H_g", 2)], &[("E_5", -2), ("E_8", -1)]),
            &all_but("", [("H_f", 2), ("H_g", 3)], &[("E_5", -2), ("E_6", -1), ("E_8", -2)]),
            &[("H_g", 1), ("E_5", -1)],
        ],
    );
    let components = classes(
        &b,
        &[
            &[
                ("H_f", 1),
                ("H_g", 1),
                ("E_1", -1),
                ("E_2", -1),
                ("E_3", -1),
                ("E_4", -1),
            ],
            &[("H_f", 1), ("E_5", -1), ("E_6", -1)],
            &[("H_g", 1), ("E_7", -1), ("E_8", -1)],
        ],
    );
    let roots = classes(
        &b,
        &[
            &[("E_3", 1), ("E_4", -1)],
            &[("E_2", 1), ("E_3", -1)],
            &[("E_1", 1), ("E_2", -1)],
            &[("H_f", 1), ("E_1", -1), ("E_7", -1)],
            &[("E_7", 1), ("E_8", -1)],
            &[("H_g", 1), ("E_1", -1), ("E_5", -1)],
            &[("E_5", 1), ("E_6", -1)],
        ],
    );
    Surface {
        name: "d-P(A2*) standard",
        minus_k: minus_k_p1xp1(&b),
        components: components.into_iter().map(|c| (c, 1)).collect(),
        roots,
        blowdown: None,
        actions: vec![("phi", phi), ("psi", psi)],
        basis: b,
    }
}

/// The Fuchsian-side d-P(A2*) surface: P2 blown up at nine points, with its
/// blow-down structure onto the standard surface.
pub fn a2_p2_surface() -> Surface {
    let b = LatticeBasis::p2(9);
    let mut mk = vec![-1; 10];
    mk[0] = 3;
    let components = classes(
        &b,
        &[
            &[
                ("E", 2),
                ("E_1", -1),
                ("E_2", -1),
                ("E_3", -1),
                ("E_4", -1),
                ("E_5", -1),
                ("E_6", -1),
            ],
            &[("E", 1), ("E_1", -1), ("E_7", -1), ("E_8", -1)],
            &[("E_1", 1), ("E_9", -1)],
        ],
    );
    let h = classes(&b, &[&[("E", 1), ("E_1", -1)], &[("E", 1), ("E_2", -1)]]);
    let exceptional = classes(
        &b,
        &[
            &[("E_3", 1)],
            &[("E_4", 1)],
            &[("E_5", 1)],
            &[("E_6", 1)],
            &[("E_7", 1)],
            &[("E_8", 1)],
            &[("E", 1), ("E_1", -1), ("E_2", -1)],
            &[("E_9", 1)],
        ],
    );
    Surface {
        name: "d-P(A2*) Fuchsian",
        minus_k: LatticeClass::new(mk),
        components: components.into_iter().map(|c| (c, 1)).collect(),
        roots: Vec::new(),
        blowdown: Some(Blowdown {
            h_f: h[0].clone(),
            h_g: h[1].clone(),
            exceptional,
        }),
        actions: Vec::new(),
        basis: b,
    }
}

impl Surface {
    pub fn translations(&self) -> Result<Vec<(&'static str, Vec<i64>)>, LatticeError> {
        self.actions
            .iter()
            .map(|(name, a)| Ok((*name, translation_vector(a, &self.roots, &self.minus_k)?)))
            .collect()
    }

    /// basis, gram, named classes and named action matrices.
    pub fn to_json(&self) -> Value {
        let mut classes = BTreeMap::new();
        classes.insert("-K".to_string(), self.minus_k.coeffs.clone());
        for (i, (d, _)) in self.components.iter().enumerate() {
            classes.insert(format!("D_{i}"), d.coeffs.clone());
        }
        for (i, a) in self.roots.iter().enumerate() {
            classes.insert(format!("alpha_{i}"), a.coeffs.clone());
        }
        if let Some(bd) = &self.blowdown {
            classes.insert("cal H_f".to_string(), bd.h_f.coeffs.clone());
            classes.insert("cal H_g".to_string(), bd.h_g.coeffs.clone());
            for (i, e) in bd.exceptional.iter().enumerate() {
                classes.insert(format!("cal E_{}", i + 1), e.coeffs.clone());
            }
        }
        let actions: BTreeMap<_, _> = self
            .actions
            .iter()
            .map(|(n, a)| (n.to_string(), a.matrix.clone()))
            .collect();
        json!({
            "name": self.name,
            "basis": self.basis.labels,
            "gram": self.basis.gram,
            "classes": classes,
            "actions": actions,
        })
    }
}
