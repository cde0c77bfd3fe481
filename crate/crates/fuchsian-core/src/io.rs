//! JSON and CSV helpers. Every float is written with 17 significant digits
//! so that parsing the output reproduces the value bit for bit.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::CoreError;
use crate::linalg::{c64, CMat, C64};
use crate::scheme::RiemannScheme;
use crate::system::{build_system_with, FuchsianSystem, Tolerances};

pub type Pair = [f64; 2];

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    value.serialize(&mut ser).expect("serializing to memory");
    String::from_utf8(buf).expect("serde_json writes utf-8")
}

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn unpair(p: Pair) -> C64 {
    c64(p[0], p[1])
}

pub fn matrix_to_pairs(a: &CMat) -> Vec<Vec<Pair>> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| pair(a[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_pairs(rows: &[Vec<Pair>]) -> Result<CMat, CoreError> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != nc) {
        return Err(CoreError::Malformed("ragged matrix rows".into()));
    }
    Ok(CMat::from_fn(nr, nc, |i, j| unpair(rows[i][j])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub matrix_size: usize,
    pub poles: Vec<Pair>,
    pub residues: Vec<Vec<Vec<Pair>>>,
}

impl SystemJson {
    pub fn from_system(s: &FuchsianSystem) -> Self {
        SystemJson {
            matrix_size: s.matrix_size(),
            poles: s.poles().iter().copied().map(pair).collect(),
            residues: s.residues().iter().map(matrix_to_pairs).collect(),
        }
    }

    pub fn to_system(&self, tol: &Tolerances) -> Result<FuchsianSystem, CoreError> {
        let residues = self
            .residues
            .iter()
            .map(|r| matrix_from_pairs(r))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(i) = residues.iter().position(|a| a.nrows() != self.matrix_size) {
            return Err(CoreError::NonSquareResidue(i));
        }
        build_system_with(self.poles.iter().copied().map(unpair).collect(), residues, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub finite: Vec<Vec<Pair>>,
    pub infinity: Vec<Pair>,
}

impl From<&RiemannScheme> for SchemeJson {
    fn from(s: &RiemannScheme) -> Self {
        SchemeJson {
            finite: s.finite.iter().map(|t| t.iter().copied().map(pair).collect()).collect(),
            infinity: s.infinity.iter().copied().map(pair).collect(),
        }
    }
}

pub fn system_to_json(s: &FuchsianSystem) -> String {
    to_json_string(&SystemJson::from_system(s))
}

pub fn system_from_json(text: &str, tol: &Tolerances) -> Result<FuchsianSystem, CoreError> {
    let raw: SystemJson = serde_json::from_str(text).map_err(|e| CoreError::Malformed(e.to_string()))?;
    raw.to_system(tol)
}
