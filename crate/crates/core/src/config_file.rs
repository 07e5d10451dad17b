//! Point-configuration JSON files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "scalar": "rational",
//!   "points": [["0", "0"], [1, "1/2"]],
//!   "extra": [["3", "-1"]]
//! }
//! ```
//!
//! * `dimension`: positive integer, the length of every point.
//! * `scalar`: `"rational"`, `"float"` or `"complex"`.
//! * `points`: array of coordinate arrays. Rational coordinates are integers
//!   or strings `"p/q"` / `"p"`; float coordinates are JSON numbers; complex
//!   coordinates are `[re, im]` pairs of numbers.
//! * `extra` (optional): auxiliary points for identities that take a free
//!   point, in the same coordinate format.
//!
//! Unknown fields are rejected.

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::models::{PointConfig, ScalarKind};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dimension: usize,
    scalar: RawKind,
    points: Vec<Vec<Value>>,
    #[serde(default)]
    extra: Vec<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Rational,
    Float,
    Complex,
}

/// A parsed configuration file.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigFile {
    Rational {
        config: PointConfig<Rational>,
        extra: Vec<Vec<Rational>>,
    },
    Real {
        config: PointConfig<f64>,
        extra: Vec<Vec<f64>>,
    },
    Complex {
        config: PointConfig<Complex64>,
        extra: Vec<Vec<Complex64>>,
    },
}

impl ConfigFile {
    pub fn kind(&self) -> ScalarKind {
        match self {
            ConfigFile::Rational { .. } => ScalarKind::Rational,
            ConfigFile::Real { .. } => ScalarKind::Real,
            ConfigFile::Complex { .. } => ScalarKind::Complex,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ConfigFile::Rational { config, .. } => config.len(),
            ConfigFile::Real { config, .. } => config.len(),
            ConfigFile::Complex { config, .. } => config.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn at(field: &str, i: usize, d: usize) -> String {
    format!("{field}[{i}][{d}]")
}

fn rational_coord(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Input(format!("{loc}: {e}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Input(format!(
            "{loc}: expected an integer or a \"p/q\" string, found {other}"
        ))),
    }
}

fn float_coord(v: &Value, loc: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Input(format!("{loc}: expected a number, found {v}")))
}

fn complex_coord(v: &Value, loc: &str) -> Result<Complex64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(float_coord(re, loc)?, float_coord(im, loc)?)),
        _ => Err(Error::Input(format!("{loc}: expected [re, im], found {v}"))),
    }
}

fn convert<T>(
    rows: &[Vec<Value>],
    field: &str,
    dimension: usize,
    coord: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != dimension {
                return Err(Error::Input(format!(
                    "{field}[{i}]: expected {dimension} coordinates, found {}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(d, v)| coord(v, &at(field, i, d)))
                .collect()
        })
        .collect()
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        Error::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    if raw.dimension == 0 {
        return Err(Error::Input("dimension: must be positive".into()));
    }
    let dim = raw.dimension;
    Ok(match raw.scalar {
        RawKind::Rational => ConfigFile::Rational {
            config: PointConfig::new(dim, convert(&raw.points, "points", dim, rational_coord)?)?,
            extra: convert(&raw.extra, "extra", dim, rational_coord)?,
        },
        RawKind::Float => ConfigFile::Real {
            config: PointConfig::new(dim, convert(&raw.points, "points", dim, float_coord)?)?,
            extra: convert(&raw.extra, "extra", dim, float_coord)?,
        },
        RawKind::Complex => ConfigFile::Complex {
            config: PointConfig::new(dim, convert(&raw.points, "points", dim, complex_coord)?)?,
            extra: convert(&raw.extra, "extra", dim, complex_coord)?,
        },
    })
}

pub fn load_config(path: &std::path::Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
