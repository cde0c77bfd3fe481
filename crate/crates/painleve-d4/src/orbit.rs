use fuchsian_core::io::fmt_f64;
use fuchsian_core::C64;

use crate::{dpv_standard_step, dpv_step, to_standard, DpvError, DpvParameters, DpvState, StandardDpvParameters};

#[derive(Debug, Clone, PartialEq)]
pub struct DpvOrbitRow {
    pub step: usize,
    pub params: DpvParameters,
    pub state: DpvState,
    pub standard: StandardDpvParameters,
    pub f: C64,
    pub g: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpvOrbit {
    pub rows: Vec<DpvOrbitRow>,
    /// Step at which iteration stopped and why.
    pub halt: Option<(usize, DpvError)>,
}

/// Iterates dpv_step and, in parallel, dpv_standard_step from the matched
/// standard image of the initial data. (f, g) in each row come from the
/// standard iteration, not from mapping (p, q).
pub fn dpv_orbit(params: &DpvParameters, state: &DpvState, steps: usize) -> Result<DpvOrbit, DpvError> {
    let (mut std_params, mut f, mut g) = to_standard(params, state)?;
    let (mut params, mut state) = (*params, *state);
    let mut rows = vec![DpvOrbitRow {
        step: 0,
        params,
        state,
        standard: std_params,
        f,
        g,
    }];
    for step in 1..=steps {
        let next = dpv_step(&params, &state).and_then(|(np, ns)| {
            let (sp, nf, ng) = dpv_standard_step(&std_params, f, g)?;
            Ok((np, ns, sp, nf, ng))
        });
        match next {
            Ok((np, ns, sp, nf, ng)) => {
                (params, state, std_params, f, g) = (np, ns, sp, nf, ng);
                rows.push(DpvOrbitRow {
                    step,
                    params,
                    state,
                    standard: std_params,
                    f,
                    g,
                });
            }
            Err(e) => {
                return Ok(DpvOrbit {
                    rows,
                    halt: Some((step, e)),
                })
            }
        }
    }
    Ok(DpvOrbit { rows, halt: None })
}

pub fn orbit_csv(rows: &[DpvOrbitRow]) -> String {
    let mut out =
        String::from("step,p_re,p_im,q_re,q_im,f_re,f_im,g_re,g_im,theta1_re,theta1_im,thetat_re,thetat_im\n");
    for r in rows {
        let cells: Vec<String> = [r.state.p, r.state.q, r.f, r.g, r.params.theta1, r.params.thetat]
            .iter()
            .flat_map(|z| [fmt_f64(z.re), fmt_f64(z.im)])
            .collect();
        out.push_str(&format!("{},{}\n", r.step, cells.join(",")));
    }
    out
}
