//! JSON documents for measurements and states.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major lists of
//! rows. A measurement document looks like
//!
//! ```json
//! { "dim": 2, "operators": [[[[1,0],[0,0]],[[0,0],[0,0]]], ...], "labels": ["0", "1"] }
//! ```
//!
//! A state document carries either `amplitudes` (pure), or `rho` and/or
//! `ensemble` (mixed; each ensemble entry is `{ "weight", "amplitudes" }`).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use eup_core::numerics::Matrix;
use eup_core::{Complex64, Measurement, MixedState, PureState};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Pair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementDocument {
    pub dim: usize,
    pub operators: Vec<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleEntry {
    pub weight: f64,
    pub amplitudes: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<Vec<EnsembleEntry>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(MixedState),
}

impl State {
    pub fn dim(&self) -> usize {
        match self {
            State::Pure(p) => p.amplitudes().len(),
            State::Mixed(m) => m.rho().rows(),
        }
    }
}

/// Where in a document a problem was found.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Position {
    pub operator: Option<usize>,
    pub row: Option<usize>,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.operator, self.row) {
            (Some(k), Some(r)) => write!(f, ", operator {k}, row {r}"),
            (Some(k), None) => write!(f, ", operator {k}"),
            (None, Some(r)) => write!(f, ", row {r}"),
            (None, None) => Ok(()),
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: parse error: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}{position}: {reason}")]
    Shape { path: PathBuf, position: Position, reason: String },
    #[error("{path}{position}: validation failed: {source}")]
    Validation { path: PathBuf, position: Position, source: eup_core::Error },
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn shape(path: &Path, operator: Option<usize>, row: Option<usize>, reason: String) -> FormatError {
    FormatError::Shape { path: path.to_path_buf(), position: Position { operator, row }, reason }
}

fn validation(path: &Path, source: eup_core::Error) -> FormatError {
    let operator = match source {
        eup_core::Error::OperatorNotHermitian { index, .. } | eup_core::Error::NotPositive { index, .. } => Some(index),
        _ => None,
    };
    FormatError::Validation { path: path.to_path_buf(), position: Position { operator, row: None }, source }
}

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn to_matrix(rows: &[Vec<Pair>], dim: usize, path: &Path, operator: Option<usize>) -> Result<Matrix, FormatError> {
    if rows.len() != dim {
        return Err(shape(path, operator, None, format!("expected {dim} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(shape(path, operator, Some(r), format!("expected {dim} entries, found {}", row.len())));
        }
        data.extend(row.iter().copied().map(complex));
    }
    Matrix::from_vec(dim, dim, data).map_err(|e| validation(path, e))
}

fn to_vector(amps: &[Pair], dim: usize, path: &Path, what: &str) -> Result<Vec<Complex64>, FormatError> {
    if amps.len() != dim {
        return Err(shape(path, None, None, format!("{what}: expected {dim} amplitudes, found {}", amps.len())));
    }
    Ok(amps.iter().copied().map(complex).collect())
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

pub fn parse_measurement_document(text: &str, path: &Path) -> Result<MeasurementDocument, FormatError> {
    parse_json(text, path)
}

pub fn measurement_from_document(doc: &MeasurementDocument, path: &Path) -> Result<Measurement, FormatError> {
    if doc.dim == 0 {
        return Err(shape(path, None, None, "dim must be positive".into()));
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.operators.len() {
            return Err(shape(
                path,
                None,
                None,
                format!("{} labels for {} operators", labels.len(), doc.operators.len()),
            ));
        }
    }
    let ops = doc
        .operators
        .iter()
        .enumerate()
        .map(|(k, rows)| to_matrix(rows, doc.dim, path, Some(k)))
        .collect::<Result<Vec<_>, _>>()?;
    Measurement::validate(ops, doc.dim).map_err(|e| validation(path, e))
}

pub fn parse_measurement(text: &str, path: &Path) -> Result<Measurement, FormatError> {
    measurement_from_document(&parse_measurement_document(text, path)?, path)
}

pub fn load_measurement(path: &Path) -> Result<Measurement, FormatError> {
    parse_measurement(&read(path)?, path)
}

pub fn measurement_document(m: &Measurement, labels: Option<Vec<String>>, provenance: Option<String>) -> MeasurementDocument {
    let dim = m.dim();
    MeasurementDocument {
        dim,
        operators: m
            .operators()
            .iter()
            .map(|op| (0..dim).map(|r| op.row(r).iter().copied().map(pair).collect()).collect())
            .collect(),
        labels,
        provenance,
    }
}

pub fn write_measurement(path: &Path, doc: &MeasurementDocument) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(doc).expect("measurement documents always serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

pub fn parse_state(text: &str, path: &Path) -> Result<State, FormatError> {
    let doc: StateDocument = parse_json(text, path)?;
    state_from_document(&doc, path)
}

pub fn state_from_document(doc: &StateDocument, path: &Path) -> Result<State, FormatError> {
    let dim = doc.dim;
    if dim == 0 {
        return Err(shape(path, None, None, "dim must be positive".into()));
    }
    let ensemble = match &doc.ensemble {
        Some(entries) => Some(
            entries
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let amps = to_vector(&e.amplitudes, dim, path, &format!("ensemble entry {k}"))?;
                    let psi = PureState::new(amps).map_err(|err| validation(path, err))?;
                    Ok((e.weight, psi))
                })
                .collect::<Result<Vec<_>, FormatError>>()?,
        ),
        None => None,
    };
    let rho = match &doc.rho {
        Some(rows) => Some(to_matrix(rows, dim, path, None)?),
        None => None,
    };
    match (&doc.amplitudes, rho, ensemble) {
        (Some(amps), None, None) => {
            let psi = PureState::new(to_vector(amps, dim, path, "amplitudes")?).map_err(|e| validation(path, e))?;
            Ok(State::Pure(psi))
        }
        (None, Some(rho), None) => Ok(State::Mixed(MixedState::from_density(rho).map_err(|e| validation(path, e))?)),
        (None, None, Some(parts)) => {
            Ok(State::Mixed(MixedState::from_ensemble(parts).map_err(|e| validation(path, e))?))
        }
        (None, Some(rho), Some(parts)) => {
            Ok(State::Mixed(MixedState::with_decomposition(rho, parts).map_err(|e| validation(path, e))?))
        }
        _ => Err(shape(path, None, None, "expected exactly one of `amplitudes` or `rho`/`ensemble`".into())),
    }
}

pub fn load_state(path: &Path) -> Result<State, FormatError> {
    parse_state(&read(path)?, path)
}

/// Whether a document looks like a measurement (has `operators`) rather than a state.
pub fn is_measurement_document(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("operators").is_some())
        .unwrap_or(true)
}

pub fn state_document(psi: &PureState) -> StateDocument {
    StateDocument {
        dim: psi.amplitudes().len(),
        amplitudes: Some(psi.amplitudes().iter().copied().map(pair).collect()),
        rho: None,
        ensemble: None,
    }
}
