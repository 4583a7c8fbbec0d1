//! Complex JSON: `{"ranks": {"0": 1, "1": 1}, "differentials": {"1": [[6]]}}`.
//!
//! Matrix entries are JSON integers, or decimal strings when they do not fit
//! in an `i64`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use super::group::{FgAbGroup, HomologyProfile};
use super::{ComplexError, PerfectComplexZ};
use crate::IntMatrix;

fn format_err(msg: impl Into<String>) -> ComplexError {
    ComplexError::Format(msg.into())
}

pub fn integer_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn integer_from_json(v: &Value) -> Result<BigInt, ComplexError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format_err(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => {
            s.trim().parse().map_err(|_| format_err(format!("{s:?} is not an integer")))
        }
        other => Err(format_err(format!("expected an integer, found {other}"))),
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(integer_to_json).collect()))
            .collect(),
    )
}

/// Row-major array of arrays. `cols` fixes the width of a matrix with no rows.
pub fn matrix_from_json(v: &Value, cols: Option<usize>) -> Result<IntMatrix, ComplexError> {
    let rows = v.as_array().ok_or_else(|| format_err("matrix must be an array of rows"))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| format_err("matrix row must be an array"))?;
        parsed.push(row.iter().map(integer_from_json).collect::<Result<Vec<_>, _>>()?);
    }
    if parsed.is_empty() {
        return Ok(IntMatrix::zeros(0, cols.unwrap_or(0)));
    }
    Ok(IntMatrix::from_rows(parsed)?)
}

fn degree_key(k: &str) -> Result<i64, ComplexError> {
    k.trim().parse().map_err(|_| format_err(format!("degree key {k:?} is not an integer")))
}

fn object<'a>(v: &'a Value, field: &str) -> Result<Option<&'a Map<String, Value>>, ComplexError> {
    match v.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Object(m)) => Ok(Some(m)),
        Some(_) => Err(format_err(format!("\"{field}\" must be an object keyed by degree"))),
    }
}

pub fn complex_from_value(v: &Value) -> Result<PerfectComplexZ, ComplexError> {
    let obj = v.as_object().ok_or_else(|| format_err("complex must be a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "ranks" && *k != "differentials") {
        return Err(format_err(format!("unknown field \"{k}\"")));
    }
    let mut ranks = BTreeMap::new();
    for (k, r) in object(v, "ranks")?.into_iter().flatten() {
        let r = r
            .as_u64()
            .and_then(|r| usize::try_from(r).ok())
            .ok_or_else(|| format_err(format!("rank in degree {k} must be a nonnegative integer")))?;
        ranks.insert(degree_key(k)?, r);
    }
    let mut differentials = BTreeMap::new();
    for (k, m) in object(v, "differentials")?.into_iter().flatten() {
        let n = degree_key(k)?;
        let cols = ranks.get(&n).copied().unwrap_or(0);
        differentials.insert(n, matrix_from_json(m, Some(cols))?);
    }
    PerfectComplexZ::new(ranks, differentials)
}

pub fn complex_from_json(text: &str) -> Result<PerfectComplexZ, ComplexError> {
    let v: Value = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    complex_from_value(&v)
}

pub fn complex_to_value(c: &PerfectComplexZ) -> Value {
    let ranks: Map<String, Value> =
        c.ranks().iter().map(|(n, r)| (n.to_string(), Value::from(*r))).collect();
    let differentials: Map<String, Value> =
        c.differentials().iter().map(|(n, d)| (n.to_string(), matrix_to_json(d))).collect();
    let mut out = Map::new();
    out.insert("ranks".into(), Value::Object(ranks));
    out.insert("differentials".into(), Value::Object(differentials));
    Value::Object(out)
}

pub fn group_to_value(g: &FgAbGroup) -> Value {
    let mut out = Map::new();
    out.insert("free_rank".into(), Value::from(g.free_rank()));
    out.insert("torsion".into(), Value::Array(g.torsion().iter().map(integer_to_json).collect()));
    Value::Object(out)
}

pub fn homology_to_value(h: &HomologyProfile) -> Value {
    Value::Object(h.iter().map(|(n, g)| (n.to_string(), group_to_value(g))).collect())
}
