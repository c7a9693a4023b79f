//! Boundary file format: load and save piecewise boundaries as JSON
//! documents.
//!
//! ```json
//! {
//!   "label": "lens",
//!   "arcs": [
//!     { "kind": "algebraic", "degree": 1, "interval": [-1.0, 1.0],
//!       "coefficients": [[0.0, 0.0], [1.0, 0.0]] },
//!     { "kind": "trigonometric", "degree": 1, "interval": [0.0, 3.1],
//!       "coefficients": { "a": [[0.0, 0.0], [1.0, 0.0]], "b": [[0.0, 1.0]] } }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. The writer emits every float with 17
//! significant digits, so a save/load round trip reproduces the boundary bit
//! for bit.

use crate::geometry::{Arc, ArcData, Boundary, GeometryError};
use num_complex::Complex64;
use serde_json::Value;
use std::fmt;
use std::io::{Read, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryIoError {
    /// Document is not well-formed JSON.
    Syntax(String),
    /// A field is missing or has the wrong shape; `arc` is the offending arc
    /// index when the problem is inside one.
    Field { arc: Option<usize>, field: &'static str, message: String },
    /// Arc data parsed but violates an arc invariant.
    Invalid { arc: usize, source: GeometryError },
    Io(String),
}

impl fmt::Display for BoundaryIoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax(msg) => write!(f, "malformed boundary document: {msg}"),
            Self::Field { arc: Some(i), field, message } => {
                write!(f, "arc {i}, field {field:?}: {message}")
            }
            Self::Field { arc: None, field, message } => write!(f, "field {field:?}: {message}"),
            Self::Invalid { arc, source } => write!(f, "arc {arc}: {source}"),
            Self::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for BoundaryIoError {}

fn field_err(
    arc: Option<usize>,
    field: &'static str,
    message: impl Into<String>,
) -> BoundaryIoError {
    BoundaryIoError::Field { arc, field, message: message.into() }
}

fn parse_complex(
    v: &Value,
    arc: usize,
    field: &'static str,
) -> Result<Complex64, BoundaryIoError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| field_err(Some(arc), field, "complex number must be a [re, im] pair"))?;
    let re = pair[0]
        .as_f64()
        .ok_or_else(|| field_err(Some(arc), field, "re component is not a number"))?;
    let im = pair[1]
        .as_f64()
        .ok_or_else(|| field_err(Some(arc), field, "im component is not a number"))?;
    Ok(Complex64::new(re, im))
}

fn parse_complex_list(
    v: &Value,
    arc: usize,
    field: &'static str,
) -> Result<Vec<Complex64>, BoundaryIoError> {
    v.as_array()
        .ok_or_else(|| field_err(Some(arc), field, "expected a list of [re, im] pairs"))?
        .iter()
        .map(|e| parse_complex(e, arc, field))
        .collect()
}

fn parse_arc(v: &Value, index: usize) -> Result<Arc, BoundaryIoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_err(Some(index), "arcs", "arc entry must be an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| field_err(Some(index), "kind", "missing or non-string"))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| field_err(Some(index), "degree", "missing or not a nonnegative integer"))?
        as usize;
    let interval = obj
        .get("interval")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| field_err(Some(index), "interval", "expected [a, b]"))?;
    let a = interval[0]
        .as_f64()
        .ok_or_else(|| field_err(Some(index), "interval", "a is not a number"))?;
    let b = interval[1]
        .as_f64()
        .ok_or_else(|| field_err(Some(index), "interval", "b is not a number"))?;
    let coeffs = obj
        .get("coefficients")
        .ok_or_else(|| field_err(Some(index), "coefficients", "missing"))?;

    let arc = match kind {
        "algebraic" => {
            let c = parse_complex_list(coeffs, index, "coefficients")?;
            if c.len() != degree + 1 {
                return Err(field_err(
                    Some(index),
                    "degree",
                    format!("declared degree {degree} but {} coefficients", c.len()),
                ));
            }
            Arc::algebraic(c, a, b)
        }
        "trigonometric" => {
            let o = coeffs.as_object().ok_or_else(|| {
                field_err(Some(index), "coefficients", "expected an object with \"a\" and \"b\"")
            })?;
            let ca = parse_complex_list(
                o.get("a").ok_or_else(|| field_err(Some(index), "coefficients", "missing \"a\""))?,
                index,
                "coefficients",
            )?;
            let cb = parse_complex_list(
                o.get("b").ok_or_else(|| field_err(Some(index), "coefficients", "missing \"b\""))?,
                index,
                "coefficients",
            )?;
            if ca.len() != degree + 1 || cb.len() != degree {
                return Err(field_err(
                    Some(index),
                    "degree",
                    format!(
                        "declared degree {degree} but got {} cos and {} sin coefficients",
                        ca.len(),
                        cb.len()
                    ),
                ));
            }
            Arc::trigonometric(ca, cb, a, b)
        }
        other => {
            return Err(field_err(
                Some(index),
                "kind",
                format!("unknown kind {other:?}; expected \"algebraic\" or \"trigonometric\""),
            ))
        }
    };
    arc.map_err(|source| BoundaryIoError::Invalid { arc: index, source })
}

/// Parses a boundary document, checking every arc invariant.
pub fn load_boundary(mut reader: impl Read) -> Result<Boundary, BoundaryIoError> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| BoundaryIoError::Io(e.to_string()))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| BoundaryIoError::Syntax(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| BoundaryIoError::Syntax("top level must be an object".into()))?;
    let label = obj
        .get("label")
        .and_then(Value::as_str)
        .ok_or_else(|| field_err(None, "label", "missing or non-string"))?;
    let arcs_val = obj
        .get("arcs")
        .and_then(Value::as_array)
        .ok_or_else(|| field_err(None, "arcs", "missing or not a list"))?;
    let arcs = arcs_val
        .iter()
        .enumerate()
        .map(|(i, v)| parse_arc(v, i))
        .collect::<Result<Vec<_>, _>>()?;
    Boundary::new(label, arcs).map_err(|_| field_err(None, "arcs", "boundary needs at least one arc"))
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn fmt_complex_list(cs: &[Complex64]) -> String {
    let inner: Vec<String> = cs.iter().map(|&z| fmt_complex(z)).collect();
    format!("[{}]", inner.join(", "))
}

/// Writes a boundary document. Floats carry 17 significant digits.
pub fn save_boundary(boundary: &Boundary, mut writer: impl Write) -> Result<(), BoundaryIoError> {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!(
        "  \"label\": {},\n",
        serde_json::to_string(boundary.label()).expect("string serializes")
    ));
    out.push_str("  \"arcs\": [\n");
    for (i, arc) in boundary.arcs().iter().enumerate() {
        let (a, b) = arc.interval();
        let interval = format!("[{}, {}]", fmt_f64(a), fmt_f64(b));
        let (kind, coeffs) = match arc.data() {
            ArcData::Algebraic { coeffs } => ("algebraic", fmt_complex_list(coeffs)),
            ArcData::Trigonometric { cos_coeffs, sin_coeffs } => (
                "trigonometric",
                format!(
                    "{{ \"a\": {}, \"b\": {} }}",
                    fmt_complex_list(cos_coeffs),
                    fmt_complex_list(sin_coeffs)
                ),
            ),
        };
        out.push_str(&format!(
            "    {{ \"kind\": \"{kind}\", \"degree\": {}, \"interval\": {interval}, \"coefficients\": {coeffs} }}{}\n",
            arc.degree(),
            if i + 1 < boundary.arcs().len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    writer.write_all(out.as_bytes()).map_err(|e| BoundaryIoError::Io(e.to_string()))
}
