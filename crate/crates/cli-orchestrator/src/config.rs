//! Run configuration: the system JSON of fuchsian-core plus mode blocks.
//! Command-line flags override the file.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use fuchsian_core::io::{unpair, Pair, SchemeJson, SystemJson};
use fuchsian_core::Tolerances;
use painleve_a2star::A2Parameters;
use painleve_d4::{DpvParameters, DpvState};
use schlesinger_map::TransformationIndex;
use serde::Deserialize;

use crate::error::CliError;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    RawSystem,
    Dpv,
    A2star,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DpvBlock {
    /// Derived from the Fuchs relation when absent.
    pub theta0: Option<Pair>,
    pub theta1: Pair,
    pub thetat: Pair,
    pub kappa1: Pair,
    pub kappa2: Pair,
    pub t: Pair,
    pub p: Pair,
    pub q: Pair,
}

impl DpvBlock {
    pub fn instance(&self) -> Result<(DpvParameters, DpvState), CliError> {
        let [theta1, thetat, kappa1, kappa2, t] =
            [self.theta1, self.thetat, self.kappa1, self.kappa2, self.t].map(unpair);
        let params = match self.theta0 {
            Some(th0) => DpvParameters::new(unpair(th0), theta1, thetat, kappa1, kappa2, t)?,
            None => DpvParameters::from_free(theta1, thetat, kappa1, kappa2, t)?,
        };
        Ok((
            params,
            DpvState {
                p: unpair(self.p),
                q: unpair(self.q),
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct A2Block {
    pub theta11: Pair,
    pub theta12: Pair,
    pub theta21: Pair,
    pub theta22: Pair,
    pub kappa1: Pair,
    pub kappa2: Pair,
    /// Derived from the Fuchs relation when absent.
    pub kappa3: Option<Pair>,
    pub x: Pair,
    pub y: Pair,
}

impl A2Block {
    pub fn instance(&self) -> Result<(A2Parameters, C64, C64), CliError> {
        let [t11, t12, t21, t22, k1, k2] = [
            self.theta11,
            self.theta12,
            self.theta21,
            self.theta22,
            self.kappa1,
            self.kappa2,
        ]
        .map(unpair);
        let params = match self.kappa3 {
            Some(k3) => A2Parameters::new(t11, t12, t21, t22, [k1, k2, unpair(k3)])?,
            None => A2Parameters::from_free(t11, t12, t21, t22, k1, k2)?,
        };
        Ok((params, unpair(self.x), unpair(self.y)))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceBlock {
    pub abs: Option<f64>,
    pub cluster: Option<f64>,
    /// Replaces the tolerance of every inexact check.
    pub check: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub system: Option<SystemJson>,
    /// Declared scheme of `system`; verify checks it against the residues.
    pub riemann_scheme: Option<SchemeJson>,
    pub dpv: Option<DpvBlock>,
    pub a2star: Option<A2Block>,
    /// One-based [alpha, beta, mu, nu], applied cyclically.
    #[serde(default)]
    pub schedule: Vec<[usize; 4]>,
    pub steps: Option<usize>,
    pub seed: Option<u64>,
    /// Random instances per suite when no instance is given.
    pub trials: Option<usize>,
    #[serde(default)]
    pub tolerances: ToleranceBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn schedule(&self) -> Result<Vec<TransformationIndex>, CliError> {
        self.schedule
            .iter()
            .map(|&[a, b, m, n]| TransformationIndex::from_one_based(a, b, m, n).map_err(CliError::from))
            .collect()
    }

    pub fn tolerances(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            abs: self.tolerances.abs.unwrap_or(d.abs),
            cluster: self.tolerances.cluster.unwrap_or(d.cluster),
        }
    }

    /// The mode-specific block must be present when the mode needs one;
    /// blocks of other modes are rejected.
    pub fn check_consistent(&self, mode: Mode) -> Result<(), CliError> {
        let stray = match mode {
            Mode::RawSystem => self.dpv.is_some() || self.a2star.is_some(),
            Mode::Dpv => self.system.is_some() || self.a2star.is_some() || !self.schedule.is_empty(),
            Mode::A2star => self.system.is_some() || self.dpv.is_some() || !self.schedule.is_empty(),
            Mode::Lattice => self.system.is_some() || self.dpv.is_some() || self.a2star.is_some(),
        };
        if stray {
            return Err(CliError::Usage(format!(
                "config has blocks that do not belong to mode {mode:?}"
            )));
        }
        if self.riemann_scheme.is_some() && self.system.is_none() {
            return Err(CliError::Usage("riemann_scheme given without a system".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mode_blocks() {
        let c = RunConfig::parse(
            r#"{"mode": "dpv", "steps": 3, "dpv": {"theta1": [0.1, 0], "thetat": [0.2, 0], "kappa1": [0.3, 0],
                "kappa2": [-0.4, 0], "t": [2, 0], "p": [0.5, 0], "q": [0.7, 0]}}"#,
        )
        .unwrap();
        assert_eq!(c.mode, Some(Mode::Dpv));
        let (params, state) = c.dpv.unwrap().instance().unwrap();
        assert!(params.fuchs_sum().norm() < 1e-15);
        assert_eq!(state.q.re, 0.7);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RunConfig::parse(r#"{"steps": -1}"#), Err(CliError::Usage(_))));
        assert!(matches!(
            RunConfig::parse(r#"{"mode": "dpv", "extra": 1}"#),
            Err(CliError::Usage(_))
        ));
        let c = RunConfig::parse(r#"{"schedule": [[0, 1, 1, 1]]}"#).unwrap();
        assert!(matches!(c.schedule(), Err(CliError::Usage(_))));
        let c = RunConfig::parse(r#"{"mode": "dpv", "schedule": [[1, 2, 1, 1]]}"#).unwrap();
        assert!(c.check_consistent(Mode::Dpv).is_err());
    }
}
