use fuchsian_core::io::fmt_f64;
use fuchsian_core::C64;

use crate::{a2_standard_step, composite_step, to_standard, A2Error, A2Parameters, StandardA2Parameters};

#[derive(Debug, Clone, PartialEq)]
pub struct A2OrbitRow {
    pub step: usize,
    pub params: A2Parameters,
    pub x: C64,
    pub y: C64,
    pub standard: StandardA2Parameters,
    pub f: C64,
    pub g: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct A2Orbit {
    pub rows: Vec<A2OrbitRow>,
    pub halt: Option<(usize, A2Error)>,
}

/// Iterates composite_step and, in parallel, a2_standard_step from the matched
/// standard image of the initial data.
pub fn a2_orbit(params: &A2Parameters, x: C64, y: C64, steps: usize) -> Result<A2Orbit, A2Error> {
    let (mut standard, mut f, mut g) = to_standard(params, x, y)?;
    let (mut params, mut x, mut y) = (*params, x, y);
    let mut rows = vec![A2OrbitRow {
        step: 0,
        params,
        x,
        y,
        standard,
        f,
        g,
    }];
    for step in 1..=steps {
        let next = composite_step(&params, x, y).and_then(|n| Ok((n, a2_standard_step(&standard, f, g)?)));
        match next {
            Ok(((np, nx, ny), (ns, nf, ng))) => {
                (params, x, y, standard, f, g) = (np, nx, ny, ns, nf, ng);
                rows.push(A2OrbitRow {
                    step,
                    params,
                    x,
                    y,
                    standard,
                    f,
                    g,
                });
            }
            Err(e) => {
                return Ok(A2Orbit {
                    rows,
                    halt: Some((step, e)),
                })
            }
        }
    }
    Ok(A2Orbit { rows, halt: None })
}

pub fn orbit_csv(rows: &[A2OrbitRow]) -> String {
    let names = [
        "x", "y", "f", "g", "theta11", "theta12", "theta21", "theta22", "kappa1", "kappa2", "kappa3",
    ];
    let mut out = String::from("step");
    for n in names {
        out.push_str(&format!(",{n}_re,{n}_im"));
    }
    out.push('\n');
    for r in rows {
        let values = [r.x, r.y, r.f, r.g].into_iter().chain(r.params.to_array());
        let cells: Vec<String> = values.flat_map(|z| [fmt_f64(z.re), fmt_f64(z.im)]).collect();
        out.push_str(&format!("{},{}\n", r.step, cells.join(",")));
    }
    out
}
