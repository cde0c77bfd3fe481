//! Standard form: f = pq, g = -(q - (theta1 + kappa2)/p)/t, s = t.

use fuchsian_core::C64;

use crate::{nonzero, DpvError, DpvParameters, DpvState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardDpvParameters {
    pub a: [C64; 5],
    pub s: C64,
}

impl StandardDpvParameters {
    /// delta = a1 + 2 a2 + a3 + a4 + a0.
    pub fn delta(&self) -> C64 {
        let [a0, a1, a2, a3, a4] = self.a;
        a1 + 2.0 * a2 + a3 + a4 + a0
    }

    pub fn shifted(&self) -> Self {
        let d = self.delta();
        let [a0, a1, a2, a3, a4] = self.a;
        StandardDpvParameters {
            a: [a0 + d, a1 + d, a2 - d, a3, a4],
            s: self.s,
        }
    }
}

pub fn to_standard(params: &DpvParameters, state: &DpvState) -> Result<(StandardDpvParameters, C64, C64), DpvError> {
    let DpvParameters {
        theta1,
        thetat,
        kappa1,
        kappa2,
        t,
        ..
    } = *params;
    let DpvState { p, q } = *state;
    if p.norm() == 0.0 {
        return Err(DpvError::ZeroP);
    }
    let a = [
        theta1 - 1.0 + kappa1,
        -thetat - kappa1,
        thetat,
        kappa2,
        -theta1 - thetat - kappa2,
    ];
    Ok((
        StandardDpvParameters { a, s: t },
        p * q,
        -(q - (theta1 + kappa2) / p) / t,
    ))
}

/// fbar + f = a3 + a1/(g + 1) + a0/(s g + 1),
/// g gbar = (fbar + abar2)(fbar + abar2 + abar4)/(s fbar (fbar - abar3)).
pub fn dpv_standard_step(
    params: &StandardDpvParameters,
    f: C64,
    g: C64,
) -> Result<(StandardDpvParameters, C64, C64), DpvError> {
    let [a0, a1, _, a3, _] = params.a;
    let s = params.s;
    let scale = 1.0 + f.norm() + g.norm() + s.norm();
    let mut f_bar = a3 - f;
    if a1.norm() != 0.0 {
        f_bar += a1 / nonzero(g + 1.0, scale, "g + 1")?;
    }
    if a0.norm() != 0.0 {
        f_bar += a0 / nonzero(s * g + 1.0, scale, "s g + 1")?;
    }
    let next = params.shifted();
    let [_, _, b2, b3, b4] = next.a;
    let den =
        s * nonzero(f_bar, scale, "fbar")? * nonzero(f_bar - b3, scale, "fbar - abar3")? * nonzero(g, scale, "g")?;
    let g_bar = (f_bar + b2) * (f_bar + b2 + b4) / den;
    Ok((next, f_bar, g_bar))
}
