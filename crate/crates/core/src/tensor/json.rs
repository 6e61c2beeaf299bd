use serde_json::{json, Value};

use super::endo::EndoTensor;
use super::metric::MetricTensor;
use crate::algebra::{superfunction_from_json, superfunction_to_json, Superfunction};
use crate::error::{Error, Result};
use crate::fields::signature_of;
use crate::scalar::Scalar;

/// A parsed tensor file of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTensor<S> {
    Endo(EndoTensor<S>),
    Metric(MetricTensor<S>),
}

fn entries_json<S: Scalar>(entries: &[Vec<Superfunction<S>>]) -> Value {
    Value::Array(entries.iter().map(|row| Value::Array(row.iter().map(superfunction_to_json).collect())).collect())
}

pub(crate) fn tensor_entries_json<S: Scalar>(t: &EndoTensor<S>) -> Value {
    entries_json(t.entries())
}

/// `{"kind": "endo" | "metric", "p", "q", "entries": [[..]]}`.
pub fn tensor_to_json<S: Scalar>(t: &AnyTensor<S>) -> Value {
    let (kind, (p, q), entries) = match t {
        AnyTensor::Endo(t) => ("endo", t.signature(), t.entries()),
        AnyTensor::Metric(g) => ("metric", g.signature(), g.entries()),
    };
    json!({"kind": kind, "p": p, "q": q, "entries": entries_json(entries)})
}

fn parse_entries<S: Scalar>(v: &Value, p: usize, q: usize) -> Result<Vec<Vec<Superfunction<S>>>> {
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"entries\" array".into()))?;
    let n = p + q;
    if rows.len() != n {
        return Err(Error::Dimension(format!("{} rows for a {n}x{n} tensor", rows.len())));
    }
    rows.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| Error::Parse("tensor rows must be arrays".into()))?;
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a {n}x{n} tensor", row.len())));
            }
            row.iter().map(|e| superfunction_from_json(e, p, q)).collect()
        })
        .collect()
}

pub fn tensor_from_json<S: Scalar>(v: &Value) -> Result<AnyTensor<S>> {
    let (p, q) = signature_of(v)?;
    let entries = parse_entries(v, p, q)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("endo") => Ok(AnyTensor::Endo(EndoTensor::from_entries(p, q, entries)?)),
        Some("metric") => Ok(AnyTensor::Metric(MetricTensor::from_entries(p, q, entries)?)),
        Some(k) => Err(Error::Parse(format!("unknown tensor kind \"{k}\""))),
        None => Err(Error::Parse("missing \"kind\"".into())),
    }
}

pub fn endo_from_json<S: Scalar>(v: &Value) -> Result<EndoTensor<S>> {
    match tensor_from_json(v)? {
        AnyTensor::Endo(t) => Ok(t),
        AnyTensor::Metric(_) => Err(Error::Parse("expected an endo tensor".into())),
    }
}

pub fn metric_from_json<S: Scalar>(v: &Value) -> Result<MetricTensor<S>> {
    match tensor_from_json(v)? {
        AnyTensor::Metric(g) => Ok(g),
        AnyTensor::Endo(_) => Err(Error::Parse("expected a metric tensor".into())),
    }
}

/// Parse raw bytes of a tensor file.
pub fn parse_tensor<S: Scalar>(bytes: &[u8]) -> Result<AnyTensor<S>> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    tensor_from_json(&v)
}
