//! Command reports, rendered either as aligned text or as one JSON document.
//!
//! Fields keep insertion order in both renderings. Human mode prints bits as
//! 6-decimal fixed point and small residuals in scientific notation; JSON
//! carries the full-precision values.

use std::fmt::Write as _;
use std::path::Path;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    /// Entropies and bounds, in bits.
    Bits(f64),
    /// Ratios, probabilities and other plain reals.
    Real(f64),
    /// Residuals and tolerances.
    Residual(f64),
    Count(u64),
    Index(Vec<usize>),
    Text(String),
    Flag(bool),
    Reals(Vec<f64>),
    Complexes(Vec<[f64; 2]>),
}

/// Six decimals, without a sign on values that round to zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        s[1..].to_string()
    } else {
        s
    }
}

impl Field {
    fn human(&self) -> String {
        match self {
            Field::Bits(x) | Field::Real(x) => fixed(*x),
            Field::Residual(x) => format!("{x:.3e}"),
            Field::Count(n) => n.to_string(),
            Field::Index(ix) => {
                let inner: Vec<String> = ix.iter().map(|i| i.to_string()).collect();
                format!("({})", inner.join(", "))
            }
            Field::Text(s) => s.clone(),
            Field::Flag(b) => if *b { "yes" } else { "no" }.to_string(),
            Field::Reals(xs) => {
                let inner: Vec<String> = xs.iter().map(|&x| fixed(x)).collect();
                format!("[{}]", inner.join(", "))
            }
            Field::Complexes(zs) => {
                let inner: Vec<String> = zs.iter().map(|z| format!("{:.6}{:+.6}i", z[0], z[1])).collect();
                format!("[{}]", inner.join(", "))
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Bits(x) | Field::Real(x) | Field::Residual(x) => s.serialize_f64(*x),
            Field::Count(n) => s.serialize_u64(*n),
            Field::Index(ix) => ix.serialize(s),
            Field::Text(t) => s.serialize_str(t),
            Field::Flag(b) => s.serialize_bool(*b),
            Field::Reals(xs) => xs.serialize(s),
            Field::Complexes(zs) => zs.serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Fields(Vec<(String, Field)>);

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    command: String,
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    results: Fields,
    checks: Fields,
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Report", 6)?;
        st.serialize_field("command", &self.command)?;
        st.serialize_field("inputs", &self.inputs)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("results", &self.results)?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("passed", &self.passed())?;
        st.end()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut out, b| {
        let _ = write!(out, "{b:02x}");
        out
    })
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            seed: None,
            results: Fields::default(),
            checks: Fields::default(),
        }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) -> &mut Self {
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: sha256_hex(bytes) });
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn field(&mut self, key: &str, value: Field) -> &mut Self {
        self.results.0.push((key.to_string(), value));
        self
    }

    /// A pass/fail flag. A failed check is a mathematical finding.
    pub fn check(&mut self, key: &str, passed: bool) -> &mut Self {
        self.checks.0.push((key.to_string(), Field::Flag(passed)));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.results.0.iter().chain(&self.checks.0).find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn passed(&self) -> bool {
        self.checks.0.iter().all(|(_, v)| *v == Field::Flag(true))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let width = self
            .results
            .0
            .iter()
            .chain(&self.checks.0)
            .map(|(k, _)| k.len())
            .chain(["command".len(), "seed".len()])
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            let _ = writeln!(out, "{k:<width$}  {v}");
        };
        line("command", &self.command);
        for input in &self.inputs {
            line("input", &format!("{} sha256:{}", input.path, input.sha256));
        }
        line("seed", &self.seed.map_or_else(|| "none".to_string(), |s| s.to_string()));
        for (k, v) in &self.results.0 {
            line(k, &v.human());
        }
        for (k, v) in &self.checks.0 {
            line(k, if *v == Field::Flag(true) { "PASS" } else { "FAIL" });
        }
        line("result", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}
