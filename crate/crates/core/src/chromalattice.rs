//! Thick subcategories of finite spectra.
//!
//! A value is either the whole category or a finite map `p -> n_p`, read as
//! the coproduct of the categories `C_{n_p, p}` of finite `p`-torsion spectra
//! acyclic for `K(n_p - 1)`. These are nested: `C_{n,p}` shrinks as `n` grows.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::arith::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChromaError {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("height at {prime} is {height}; heights start at 1")]
    InvalidHeight { prime: u64, height: u32 },
    #[error("malformed spectra value: {0}")]
    Format(String),
}

impl ChromaError {
    pub fn name(&self) -> &'static str {
        match self {
            ChromaError::NotPrime(_) => "NotPrime",
            ChromaError::InvalidHeight { .. } => "InvalidHeight",
            ChromaError::Format(_) => "Format",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectraThick {
    Whole,
    Torsion(BTreeMap<u64, u32>),
}

impl SpectraThick {
    pub fn zero() -> Self {
        SpectraThick::Torsion(BTreeMap::new())
    }

    /// Validates primes and heights.
    pub fn torsion(heights: impl IntoIterator<Item = (u64, u32)>) -> Result<Self, ChromaError> {
        let mut map = BTreeMap::new();
        for (p, n) in heights {
            if !is_prime(p) {
                return Err(ChromaError::NotPrime(p));
            }
            if n == 0 {
                return Err(ChromaError::InvalidHeight { prime: p, height: n });
            }
            map.insert(p, n);
        }
        Ok(SpectraThick::Torsion(map))
    }

    /// `C_{n,p}`.
    pub fn chromatic(p: u64, n: u32) -> Result<Self, ChromaError> {
        Self::torsion([(p, n)])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SpectraThick::Torsion(h) if h.is_empty())
    }

    pub fn is_indecomposable(&self) -> bool {
        match self {
            SpectraThick::Whole => true,
            SpectraThick::Torsion(h) => h.len() == 1,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        match self {
            SpectraThick::Whole => {
                out.insert("whole".into(), Value::Bool(true));
            }
            SpectraThick::Torsion(h) => {
                let heights = h.iter().map(|(p, n)| (p.to_string(), Value::from(*n))).collect();
                out.insert("heights".into(), Value::Object(heights));
            }
        }
        Value::Object(out)
    }

    /// Accepts `{"whole": true}` or `{"heights": {"2": 3}}`.
    pub fn from_value(v: &Value) -> Result<Self, ChromaError> {
        let bad = |msg: &str| ChromaError::Format(format!("{msg}: {v}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        match (obj.get("whole"), obj.get("heights"), obj.len()) {
            (Some(Value::Bool(true)), None, 1) => Ok(SpectraThick::Whole),
            (None, Some(Value::Object(h)), 1) => {
                let mut heights = Vec::with_capacity(h.len());
                for (k, n) in h {
                    let p = k.trim().parse::<u64>().map_err(|_| bad("prime keys must be integers"))?;
                    let n = n
                        .as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| bad("heights must be positive integers"))?;
                    heights.push((p, n));
                }
                Self::torsion(heights)
            }
            _ => Err(bad("expected exactly one of \"whole\": true or \"heights\"")),
        }
    }
}

impl fmt::Display for SpectraThick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraThick::Whole => write!(f, "F"),
            SpectraThick::Torsion(h) if h.is_empty() => write!(f, "0"),
            SpectraThick::Torsion(h) => {
                let parts: Vec<String> = h.iter().map(|(p, n)| format!("C({n},{p})")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// One indecomposable piece per prime, ordered by prime. The zero
/// subcategory has no pieces.
pub fn decompose_spectra(t: &SpectraThick) -> Vec<SpectraThick> {
    match t {
        SpectraThick::Whole => vec![SpectraThick::Whole],
        SpectraThick::Torsion(h) => {
            h.iter().map(|(&p, &n)| SpectraThick::Torsion([(p, n)].into())).collect()
        }
    }
}

pub fn intersect_spectra(a: &SpectraThick, b: &SpectraThick) -> SpectraThick {
    match (a, b) {
        (SpectraThick::Whole, x) | (x, SpectraThick::Whole) => x.clone(),
        (SpectraThick::Torsion(x), SpectraThick::Torsion(y)) => SpectraThick::Torsion(
            x.iter().filter_map(|(p, &n)| y.get(p).map(|&m| (*p, n.max(m)))).collect(),
        ),
    }
}

/// Smallest thick subcategory containing both.
pub fn join_spectra(a: &SpectraThick, b: &SpectraThick) -> SpectraThick {
    match (a, b) {
        (SpectraThick::Whole, _) | (_, SpectraThick::Whole) => SpectraThick::Whole,
        (SpectraThick::Torsion(x), SpectraThick::Torsion(y)) => {
            let mut out = x.clone();
            for (&p, &m) in y {
                out.entry(p).and_modify(|n| *n = (*n).min(m)).or_insert(m);
            }
            SpectraThick::Torsion(out)
        }
    }
}

/// Whether `b` is a subcategory of `a`.
pub fn contains(a: &SpectraThick, b: &SpectraThick) -> bool {
    match (a, b) {
        (SpectraThick::Whole, _) => true,
        (SpectraThick::Torsion(_), SpectraThick::Whole) => false,
        (SpectraThick::Torsion(x), SpectraThick::Torsion(y)) => {
            y.iter().all(|(p, &m)| x.get(p).is_some_and(|&n| n <= m))
        }
    }
}
