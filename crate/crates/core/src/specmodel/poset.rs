use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SpecError;

/// A finite model of a prime spectrum: named points ordered by inclusion.
///
/// `p ≤ q` means `q` contains `p`, i.e. `q ∈ V(p)`. The order stored here is
/// the reflexive-transitive closure of the relations supplied at load time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePrimePoset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    // order[p * n + q] == (p ≤ q)
    order: Vec<bool>,
    cone_point: Option<usize>,
}

/// On-disk form: `{"elements": [...], "relations": [[a, b], ...], "cone_point": "m"}`.
/// Each relation `[a, b]` declares `a ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_point: Option<String>,
}

impl FinitePrimePoset {
    pub fn new<S: AsRef<str>>(
        elements: &[S],
        relations: &[(S, S)],
        cone_point: Option<&str>,
    ) -> Result<Self, SpecError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(SpecError::DuplicateElement(name.clone()));
            }
        }
        let n = names.len();
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| SpecError::UnknownElement(name.to_owned()))
        };

        let mut order = vec![false; n * n];
        for i in 0..n {
            order[i * n + i] = true;
        }
        for (lo, hi) in relations {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            order[lo * n + hi] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !order[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if order[k * n + j] {
                        order[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if order[i * n + j] && order[j * n + i] {
                    return Err(SpecError::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }

        let mut poset = FinitePrimePoset { names, index, order, cone_point: None };
        if let Some(name) = cone_point {
            let c = poset.index_of(name)?;
            if !poset.is_greatest(c) {
                return Err(SpecError::InvalidConePoint(name.to_owned()));
            }
            poset.cone_point = Some(c);
        }
        Ok(poset)
    }

    pub fn from_json_str(text: &str) -> Result<Self, SpecError> {
        let raw: PosetJson =
            serde_json::from_str(text).map_err(|e| SpecError::Format(e.to_string()))?;
        Self::from_description(&raw)
    }

    pub fn from_description(raw: &PosetJson) -> Result<Self, SpecError> {
        Self::new(&raw.elements, &raw.relations, raw.cone_point.as_deref())
    }

    /// Elements in load order, relations as the covering pairs of the order.
    pub fn to_description(&self) -> PosetJson {
        let relations = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        PosetJson {
            elements: self.names.clone(),
            relations,
            cone_point: self.cone_point.map(|c| self.names[c].clone()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SpecError> {
        self.index.get(name).copied().ok_or_else(|| SpecError::UnknownElement(name.to_owned()))
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.order[p * self.len() + q]
    }

    pub fn cone_point(&self) -> Option<usize> {
        self.cone_point
    }

    /// Indices of `V(p)`: every point containing `p`, including `p` itself.
    pub fn up_set(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&q| self.leq(p, q))
    }

    pub fn is_greatest(&self, p: usize) -> bool {
        (0..self.len()).all(|q| self.leq(q, p))
    }

    pub fn greatest_element(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.is_greatest(p))
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between, sorted by index.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between =
                    (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
