//! Standard form with f + g = 0 through four base points.

use fuchsian_core::C64;

use crate::{nonzero, A2Error, A2Parameters};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardA2Parameters {
    pub b: [C64; 8],
}

impl StandardA2Parameters {
    pub fn delta(&self) -> C64 {
        self.b.iter().sum()
    }

    pub fn shifted(&self) -> Self {
        let d = self.delta();
        let mut b = self.b;
        b[4] += d;
        b[5] += d;
        b[6] -= d;
        b[7] -= d;
        StandardA2Parameters { b }
    }
}

pub fn to_standard(params: &A2Parameters, x: C64, y: C64) -> Result<(StandardA2Parameters, C64, C64), A2Error> {
    let A2Parameters {
        theta11,
        theta12,
        theta21,
        theta22,
        kappa,
    } = *params;
    let scale = 1.0 + x.norm() + y.norm();
    let den_f = nonzero(theta22 - theta21, 1.0, "theta22 - theta21")?;
    let den_g = nonzero(x - y - theta21, scale, "x - y - theta21")?;
    let f = (theta11 - theta12) * (x - y - theta22) / den_f;
    let g = (theta22 * (x - theta21) - theta21 * y) / den_g;
    let zero = C64::new(0.0, 0.0);
    let b = [
        theta12 + kappa[0],
        theta12 + kappa[1],
        theta12 + kappa[2],
        zero,
        theta21,
        theta22,
        theta11 - theta12,
        -theta12 - 1.0,
    ];
    Ok((StandardA2Parameters { b }, f, g))
}

/// Solves (f + g)(fbar + g) = prod(g + b_1..4)/((g - b5)(g - b6)) for fbar, then
/// (fbar + g)(fbar + gbar) = prod(fbar - b_1..4)/((fbar + b7 - delta)(fbar + b8 - delta)) for gbar.
pub fn a2_standard_step(
    params: &StandardA2Parameters,
    f: C64,
    g: C64,
) -> Result<(StandardA2Parameters, C64, C64), A2Error> {
    let b = params.b;
    let d = params.delta();
    let scale = 1.0 + f.norm() + g.norm();
    let s2 = scale * scale;
    let num1: C64 = b[..4].iter().map(|bi| g + bi).product();
    let den1 =
        nonzero(g - b[4], scale, "g - b5")? * nonzero(g - b[5], scale, "g - b6")? * nonzero(f + g, scale, "f + g")?;
    let f_bar = -g + num1 / den1;
    let scale = scale + f_bar.norm();
    let num2: C64 = b[..4].iter().map(|bi| f_bar - bi).product();
    let den2 = nonzero(f_bar + b[6] - d, scale, "fbar + b7 - delta")?
        * nonzero(f_bar + b[7] - d, scale, "fbar + b8 - delta")?
        * nonzero(f_bar + g, s2.max(scale), "fbar + g")?;
    let g_bar = -f_bar + num2 / den2;
    Ok((params.shifted(), f_bar, g_bar))
}
