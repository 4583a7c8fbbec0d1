//! Supports as JSON: a poset support is a list of element names, a Spec ℤ
//! support is a list of primes or the string `"whole"`.

use std::collections::BTreeSet;

use serde_json::Value;

use super::{PosetSupport, SpecError, SpecModel, ThickSupport, ZSupport};

pub fn support_to_value(s: &ThickSupport) -> Value {
    match s {
        ThickSupport::Integers(ZSupport::Whole) => Value::String("whole".into()),
        ThickSupport::Integers(ZSupport::Closed(ps)) => {
            Value::Array(ps.iter().map(|&p| Value::from(p)).collect())
        }
        ThickSupport::Poset(p) => {
            Value::Array(p.names().into_iter().map(|n| Value::String(n.into())).collect())
        }
    }
}

/// Reads a support in `model`. Poset lists must already be up-closed.
pub fn support_from_value(model: &SpecModel, v: &Value) -> Result<ThickSupport, SpecError> {
    let bad = || SpecError::Format(format!("unsupported support value {v}"));
    match model {
        SpecModel::Integers => match v {
            Value::String(s) if s.eq_ignore_ascii_case("whole") => Ok(ZSupport::Whole.into()),
            Value::Array(items) => {
                let primes = items
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ZSupport::closed(primes)?.into())
            }
            _ => Err(bad()),
        },
        SpecModel::Poset(poset) => {
            let items = v.as_array().ok_or_else(bad)?;
            let mut members = BTreeSet::new();
            for x in items {
                let name = x.as_str().ok_or_else(bad)?;
                members.insert(poset.index_of(name)?);
            }
            Ok(PosetSupport::new(poset.clone(), members)?.into())
        }
    }
}

pub fn support_from_json(model: &SpecModel, text: &str) -> Result<ThickSupport, SpecError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SpecError::Format(e.to_string()))?;
    support_from_value(model, &v)
}
