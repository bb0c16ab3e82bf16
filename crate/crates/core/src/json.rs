//! JSON field documents.
//!
//! ```json
//! {"kind":"scalar","terms":[{"c":"3/2","e":[2,0,1]}]}
//! {"kind":"vector","components":[[...],[...],[...]]}
//! ```
//!
//! `c` is `"p"` or `"p/q"` in decimal. A missing or empty terms array is the
//! zero field. Repeated exponent triples within one polynomial are rejected.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldValue, PointValue, ScalarField, VectorField};
use crate::poly::{Exponents, Polynomial, Rational, TooManyTerms};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed field document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid coefficient {0:?}")]
    Coefficient(String),
    #[error("duplicate exponent triple {0:?}")]
    DuplicateExponents(Exponents),
    #[error(transparent)]
    TooManyTerms(#[from] TooManyTerms),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub c: String,
    pub e: Exponents,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Scalar {
        #[serde(default)]
        terms: Vec<TermDoc>,
    },
    Vector {
        #[serde(default)]
        components: [Vec<TermDoc>; 3],
    },
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::Coefficient(s.to_string());
    let int = |t: &str| -> Result<BigInt, FormatError> {
        let t = t.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

pub fn format_rational(c: &Rational) -> String {
    c.to_string()
}

fn poly_from_terms(terms: &[TermDoc]) -> Result<Polynomial, FormatError> {
    let mut seen = BTreeSet::new();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if !seen.insert(t.e) {
            return Err(FormatError::DuplicateExponents(t.e));
        }
        parsed.push((t.e, parse_rational(&t.c)?));
    }
    let p = Polynomial::from_terms(parsed);
    p.check_size()?;
    Ok(p)
}

fn poly_to_terms(p: &Polynomial) -> Vec<TermDoc> {
    p.terms()
        .map(|(e, c)| TermDoc {
            c: format_rational(c),
            e: *e,
        })
        .collect()
}

impl FieldDoc {
    pub fn to_field(&self) -> Result<FieldValue, FormatError> {
        Ok(match self {
            FieldDoc::Scalar { terms } => FieldValue::Scalar(ScalarField(poly_from_terms(terms)?)),
            FieldDoc::Vector { components } => FieldValue::Vector(VectorField([
                poly_from_terms(&components[0])?,
                poly_from_terms(&components[1])?,
                poly_from_terms(&components[2])?,
            ])),
        })
    }

    pub fn from_field(fv: &FieldValue) -> FieldDoc {
        match fv {
            FieldValue::Scalar(s) => FieldDoc::Scalar {
                terms: poly_to_terms(&s.0),
            },
            FieldValue::Vector(v) => FieldDoc::Vector {
                components: v.0.clone().map(|p| poly_to_terms(&p)),
            },
        }
    }
}

pub fn field_from_json(text: &str) -> Result<FieldValue, FormatError> {
    serde_json::from_str::<FieldDoc>(text)?.to_field()
}

/// Compact single-line JSON with terms in ascending exponent order.
pub fn field_to_json(fv: &FieldValue) -> String {
    serde_json::to_string(&FieldDoc::from_field(fv)).expect("field documents always serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointValueDoc {
    Scalar { value: String },
    Vector { value: [String; 3] },
}

pub fn point_value_to_json(v: &PointValue) -> String {
    let doc = match v {
        PointValue::Scalar(c) => PointValueDoc::Scalar {
            value: format_rational(c),
        },
        PointValue::Vector(cs) => PointValueDoc::Vector {
            value: cs.clone().map(|c| format_rational(&c)),
        },
    };
    serde_json::to_string(&doc).expect("point values always serialize")
}

/// Parses `"a,b,c"` with rational entries.
pub fn parse_point(s: &str) -> Result<[Rational; 3], FormatError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(FormatError::Coefficient(s.to_string()));
    };
    Ok([parse_rational(a)?, parse_rational(b)?, parse_rational(c)?])
}
