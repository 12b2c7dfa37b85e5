//! The on-disk arrangement description: UTF-8 JSON with rational
//! coefficients written as strings ("3", "-1/2"), so no value ever passes
//! through a binary float.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "hyperplanes": [
//!     { "normal": ["1", "0"], "offset": "0" },
//!     { "normal": ["1", "-1/2"], "offset": "3/4" }
//!   ],
//!   "local_system": [-1, 1]
//! }
//! ```
//!
//! `local_system` is optional and must list one `+1`/`-1` per hyperplane.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use signcoh::{Arrangement, Hyperplane, Rational, Sign, SignLocalSystem};

/// Hyperplanes beyond this count are rejected: the exhaustive connectivity
/// and face machinery is built for desk-scale inputs.
pub const MAX_HYPERPLANES: usize = 16;
/// Ambient dimensions beyond this are likewise rejected.
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplaneDocument {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementDocument {
    pub dimension: usize,
    pub hyperplanes: Vec<HyperplaneDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_system: Option<Vec<i8>>,
}

/// Validation failure with enough context to point at the offending input.
#[derive(Debug)]
pub enum DocumentError {
    Io(String),
    /// JSON syntax or shape error, with source position.
    Json { line: usize, column: usize, message: String },
    /// Semantic error, addressed by JSON path.
    Field { path: String, message: String },
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Io(m) => write!(f, "{m}"),
            DocumentError::Json { line, column, message } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            DocumentError::Field { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl ArrangementDocument {
    pub fn from_path(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DocumentError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, DocumentError> {
        if self.dimension > MAX_DIMENSION {
            return Err(DocumentError::Field {
                path: "dimension".to_string(),
                message: format!("dimension {} exceeds the supported limit of {MAX_DIMENSION}", self.dimension),
            });
        }
        if self.hyperplanes.len() > MAX_HYPERPLANES {
            return Err(DocumentError::Field {
                path: "hyperplanes".to_string(),
                message: format!(
                    "{} hyperplanes exceed the supported limit of {MAX_HYPERPLANES}",
                    self.hyperplanes.len()
                ),
            });
        }
        let mut hyperplanes = Vec::with_capacity(self.hyperplanes.len());
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if h.normal.len() != self.dimension {
                return Err(DocumentError::Field {
                    path: format!("hyperplanes[{i}].normal"),
                    message: format!(
                        "has {} entries but dimension is {}",
                        h.normal.len(),
                        self.dimension
                    ),
                });
            }
            let normal = h
                .normal
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_rational(s).map_err(|m| DocumentError::Field {
                        path: format!("hyperplanes[{i}].normal[{j}]"),
                        message: m,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let offset = parse_rational(&h.offset).map_err(|m| DocumentError::Field {
                path: format!("hyperplanes[{i}].offset"),
                message: m,
            })?;
            hyperplanes.push(Hyperplane::new(normal, offset));
        }
        Arrangement::new(self.dimension, hyperplanes).map_err(|e| DocumentError::Field {
            path: "hyperplanes".to_string(),
            message: e.to_string(),
        })
    }

    /// The document's own local system, validated, when present.
    pub fn local_system(&self) -> Result<Option<SignLocalSystem>, DocumentError> {
        let Some(values) = &self.local_system else {
            return Ok(None);
        };
        parse_signs(values, self.hyperplanes.len(), "local_system").map(Some)
    }
}

/// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("empty rational".to_string());
    }
    let (numer_text, denom_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| format!("invalid integer {numer_text:?}"))?;
    let denom: BigInt = match denom_text {
        Some(d) => d.parse().map_err(|_| format!("invalid integer {d:?}"))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(numer, denom))
}

/// Validates a list of `+1`/`-1` values against the hyperplane count.
pub fn parse_signs(
    values: &[i8],
    expected: usize,
    path: &str,
) -> Result<SignLocalSystem, DocumentError> {
    if values.len() != expected {
        return Err(DocumentError::Field {
            path: path.to_string(),
            message: format!("has {} entries but the arrangement has {expected} hyperplanes", values.len()),
        });
    }
    for (i, &v) in values.iter().enumerate() {
        if Sign::from_i8(v).is_none() {
            return Err(DocumentError::Field {
                path: format!("{path}[{i}]"),
                message: format!("sign must be +1 or -1, got {v}"),
            });
        }
    }
    Ok(SignLocalSystem::from_i8(values).expect("validated above"))
}

/// Parses a `--signs` flag value like "-1,1,+1".
pub fn parse_signs_flag(text: &str, expected: usize) -> Result<SignLocalSystem, DocumentError> {
    let values: Result<Vec<i8>, DocumentError> = text
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            let cleaned = part.trim().trim_start_matches('+');
            cleaned.parse::<i8>().map_err(|_| DocumentError::Field {
                path: format!("--signs[{i}]"),
                message: format!("sign must be +1 or -1, got {part:?}"),
            })
        })
        .collect();
    parse_signs(&values?, expected, "--signs")
}
