//! JSON formats: matrices as {"n", "re", "im"} and small real arrays given
//! either inline or as a file path.

use crate::error::{Error, Result};
use crate::CMatrix;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::Path;

/// Square complex matrix as separate real and imaginary rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        let n = m.dim();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        Self { n, re, im }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        let n = m.n;
        if m.re.len() != n || m.im.len() != n {
            return Err(Error::Invalid(format!("matrix must have {n} rows")));
        }
        if m.re.iter().chain(&m.im).any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("every row must have {n} entries")));
        }
        if m.re.iter().chain(&m.im).flatten().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("matrix entries must be finite".into()));
        }
        Ok(CMatrix::from_parts(&m.re, &m.im))
    }
}

/// serde adapter for `CMatrix` fields.
pub mod matrix_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMatrix, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        CMatrix::try_from(m).map_err(serde::de::Error::custom)
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?;
    CMatrix::try_from(m)
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Parses `arg` as JSON, falling back to reading it as a file path.
pub fn inline_or_file<T: DeserializeOwned>(arg: &str) -> Result<T> {
    match serde_json::from_str(arg) {
        Ok(v) => Ok(v),
        Err(inline) => match std::fs::read_to_string(arg) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{arg}: {e}"))),
            Err(_) => Err(Error::Invalid(format!("cannot parse '{arg}': {inline}"))),
        },
    }
}
