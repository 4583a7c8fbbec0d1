//! Krull-Schmidt decomposition of thick supports.
//!
//! The pieces of a support `S` are indexed by the connected components of
//! its support graph: vertices are the minimal primes of `S`, joined when
//! their closures meet. A component contributes the union of the closures of
//! its vertices.

mod graph;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::specmodel::json::support_to_value;
use crate::specmodel::{
    enumerate_thick_supports, FinitePrimePoset, Point, PosetSupport, SpecError, SpecModel,
    ThickSupport, ZSupport,
};

pub use graph::SupportGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KsError {
    #[error("support is empty")]
    EmptySupport,
    #[error("parts {first} and {second} overlap at {witness}")]
    NotDisjoint { first: usize, second: usize, witness: Point },
    #[error("{0} is not the greatest element, so it cannot be the cone point")]
    InvalidConePoint(String),
    #[error("punctured mode needs a finite poset with a cone point")]
    PuncturedUnsupported,
    #[error(transparent)]
    Spec(#[from] SpecError),
}

impl KsError {
    pub fn name(&self) -> &'static str {
        match self {
            KsError::EmptySupport => "EmptySupport",
            KsError::NotDisjoint { .. } => "NotDisjoint",
            KsError::InvalidConePoint(_) => "InvalidConePoint",
            KsError::PuncturedUnsupported => "PuncturedUnsupported",
            KsError::Spec(e) => e.name(),
        }
    }
}

/// How pieces are allowed to overlap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DecompositionMode {
    /// Pieces are pairwise disjoint.
    Plain,
    /// Pieces meet exactly in the named greatest element.
    Punctured(String),
}

impl DecompositionMode {
    pub fn punctured(cone_point: impl Into<String>) -> Self {
        DecompositionMode::Punctured(cone_point.into())
    }

    /// The punctured mode at the poset's declared cone point.
    pub fn at_cone_point(poset: &FinitePrimePoset) -> Option<Self> {
        poset.cone_point().map(|c| DecompositionMode::punctured(poset.name(c)))
    }

    pub fn label(&self) -> &'static str {
        match self {
            DecompositionMode::Plain => "plain",
            DecompositionMode::Punctured(_) => "punctured",
        }
    }

    fn cone_index(&self, poset: &FinitePrimePoset) -> Result<Option<usize>, KsError> {
        match self {
            DecompositionMode::Plain => Ok(None),
            DecompositionMode::Punctured(name) => {
                let i = poset.index_of(name)?;
                if !poset.is_greatest(i) {
                    return Err(KsError::InvalidConePoint(name.clone()));
                }
                Ok(Some(i))
            }
        }
    }
}

/// An ordered list of pieces whose union is `support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSDecomposition {
    support: ThickSupport,
    mode: DecompositionMode,
    components: Vec<ThickSupport>,
}

impl KSDecomposition {
    pub fn support(&self) -> &ThickSupport {
        &self.support
    }

    pub fn mode(&self) -> &DecompositionMode {
        &self.mode
    }

    pub fn components(&self) -> &[ThickSupport] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn into_components(self) -> Vec<ThickSupport> {
        self.components
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("mode".into(), Value::String(self.mode.label().into()));
        if let DecompositionMode::Punctured(c) = &self.mode {
            out.insert("cone_point".into(), Value::String(c.clone()));
        }
        out.insert("support".into(), support_to_value(&self.support));
        out.insert(
            "components".into(),
            Value::Array(self.components.iter().map(support_to_value).collect()),
        );
        Value::Object(out)
    }
}

/// Members of a poset support that take part in the graph, with the cone
/// point removed in punctured mode.
struct Working<'a> {
    poset: &'a Arc<FinitePrimePoset>,
    members: BTreeSet<usize>,
}

fn working_set<'a>(s: &'a PosetSupport, mode: &DecompositionMode) -> Result<Working<'a>, KsError> {
    let poset = s.poset();
    let cone = mode.cone_index(poset)?;
    let members: BTreeSet<usize> =
        s.members().iter().copied().filter(|&i| Some(i) != cone).collect();
    if members.is_empty() {
        return Err(KsError::EmptySupport);
    }
    Ok(Working { poset, members })
}

impl Working<'_> {
    /// Minimal members, sorted by name.
    fn minimal(&self) -> Vec<usize> {
        let mut mins: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&v| !self.members.iter().any(|&u| u != v && self.poset.leq(u, v)))
            .collect();
        mins.sort_by(|&a, &b| self.poset.name(a).cmp(self.poset.name(b)));
        mins
    }

    fn closures_meet(&self, a: usize, b: usize) -> bool {
        self.members.iter().any(|&r| self.poset.leq(a, r) && self.poset.leq(b, r))
    }

    fn point(&self, i: usize) -> Point {
        Point::Element { index: i, name: self.poset.name(i).to_owned() }
    }
}

fn integer_vertices(z: &ZSupport, mode: &DecompositionMode) -> Result<Vec<Point>, KsError> {
    if *mode != DecompositionMode::Plain {
        return Err(KsError::PuncturedUnsupported);
    }
    match z {
        ZSupport::Whole => Ok(vec![Point::Generic]),
        ZSupport::Closed(ps) if ps.is_empty() => Err(KsError::EmptySupport),
        ZSupport::Closed(ps) => Ok(ps.iter().map(|&p| Point::Closed(p)).collect()),
    }
}

/// Minimal primes of `s`, in canonical vertex order.
pub fn minimal_primes(s: &ThickSupport, mode: &DecompositionMode) -> Result<Vec<Point>, KsError> {
    match s {
        ThickSupport::Integers(z) => integer_vertices(z, mode),
        ThickSupport::Poset(p) => {
            let w = working_set(p, mode)?;
            Ok(w.minimal().into_iter().map(|i| w.point(i)).collect())
        }
    }
}

pub fn support_graph(s: &ThickSupport, mode: &DecompositionMode) -> Result<SupportGraph, KsError> {
    match s {
        // (0) is below everything but is only ever a vertex on its own, and
        // distinct closed points have disjoint closures.
        ThickSupport::Integers(z) => Ok(SupportGraph::new(integer_vertices(z, mode)?, [])),
        ThickSupport::Poset(p) => {
            let w = working_set(p, mode)?;
            let mins = w.minimal();
            let mut edges = Vec::new();
            for a in 0..mins.len() {
                for b in a + 1..mins.len() {
                    if w.closures_meet(mins[a], mins[b]) {
                        edges.push((a, b));
                    }
                }
            }
            Ok(SupportGraph::new(mins.iter().map(|&i| w.point(i)).collect(), edges))
        }
    }
}

/// Splits `s` into its indecomposable pieces, ordered by least vertex.
///
/// In punctured mode the support consisting of the cone point alone is the
/// zero category; it is returned as its own single piece.
pub fn ks_decompose(s: &ThickSupport, mode: &DecompositionMode) -> Result<KSDecomposition, KsError> {
    if s.is_empty() {
        return Err(KsError::EmptySupport);
    }
    let components = match s {
        ThickSupport::Integers(z) => match z {
            ZSupport::Whole => {
                integer_vertices(z, mode)?;
                vec![s.clone()]
            }
            ZSupport::Closed(ps) => {
                integer_vertices(z, mode)?;
                ps.iter().map(|&p| ZSupport::Closed([p].into()).into()).collect()
            }
        },
        ThickSupport::Poset(p) => {
            let poset = p.poset();
            if let Some(c) = mode.cone_index(poset)? {
                if p.members().len() == 1 && p.members().contains(&c) {
                    return Ok(KSDecomposition {
                        support: s.clone(),
                        mode: mode.clone(),
                        components: vec![s.clone()],
                    });
                }
            }
            let w = working_set(p, mode)?;
            let mins = w.minimal();
            let graph = support_graph(s, mode)?;
            graph
                .components()
                .into_iter()
                .map(|comp| {
                    let members: BTreeSet<usize> =
                        comp.iter().flat_map(|&v| poset.up_set(mins[v])).collect();
                    PosetSupport::new(poset.clone(), members).map(ThickSupport::from)
                })
                .collect::<Result<_, _>>()?
        }
    };
    Ok(KSDecomposition { support: s.clone(), mode: mode.clone(), components })
}

fn least_point(s: &ThickSupport, skip: Option<usize>) -> Option<Point> {
    match s {
        ThickSupport::Integers(ZSupport::Whole) => Some(Point::Generic),
        ThickSupport::Integers(ZSupport::Closed(ps)) => ps.first().map(|&p| Point::Closed(p)),
        ThickSupport::Poset(p) => p
            .members()
            .iter()
            .copied()
            .filter(|&i| Some(i) != skip)
            .min_by(|&a, &b| p.poset().name(a).cmp(p.poset().name(b)))
            .map(|i| Point::Element { index: i, name: p.poset().name(i).to_owned() }),
    }
}

/// Union of pairwise disjoint parts (in punctured mode, parts meeting only in
/// the cone point). The empty join is the empty support of `model`.
pub fn join_supports(
    model: &SpecModel,
    parts: &[ThickSupport],
    mode: &DecompositionMode,
) -> Result<ThickSupport, KsError> {
    let cone = match (model, mode) {
        (_, DecompositionMode::Plain) => None,
        (SpecModel::Integers, DecompositionMode::Punctured(_)) => {
            return Err(KsError::PuncturedUnsupported)
        }
        (SpecModel::Poset(p), m) => m.cone_index(p)?,
    };
    let mut joined = ThickSupport::empty(model);
    for (j, part) in parts.iter().enumerate() {
        if !part.model().same_as(model) {
            return Err(SpecError::ModelMismatch.into());
        }
        for (i, earlier) in parts[..j].iter().enumerate() {
            let meet = earlier.intersect(part)?;
            if let Some(witness) = least_point(&meet, cone) {
                return Err(KsError::NotDisjoint { first: i, second: j, witness });
            }
        }
        joined = joined.union(part)?;
    }
    Ok(joined)
}

/// Whether `s` is a single nonzero piece. The empty support is not.
pub fn is_indecomposable(s: &ThickSupport, mode: &DecompositionMode) -> Result<bool, KsError> {
    match ks_decompose(s, mode) {
        Ok(d) => Ok(d.len() == 1),
        Err(KsError::EmptySupport) => Ok(false),
        Err(e) => Err(e),
    }
}

/// First nonempty thick support of `poset` (in enumeration order) that
/// decomposes, if any.
pub fn decomposable_witness(
    poset: &Arc<FinitePrimePoset>,
    mode: &DecompositionMode,
) -> Result<Option<ThickSupport>, KsError> {
    for s in enumerate_thick_supports(poset, true)? {
        if !is_indecomposable(&s, mode)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Whether every nonempty thick support of `poset` is indecomposable. In
/// plain mode this happens exactly when `poset` has a greatest element, and
/// the two answers are checked against each other.
pub fn all_supports_indecomposable(
    poset: &Arc<FinitePrimePoset>,
    mode: &DecompositionMode,
) -> Result<bool, KsError> {
    let exhaustive = decomposable_witness(poset, mode)?.is_none();
    if *mode == DecompositionMode::Plain {
        let local = poset.greatest_element().is_some();
        assert_eq!(
            exhaustive, local,
            "exhaustive search disagrees with the greatest-element test"
        );
    }
    Ok(exhaustive)
}
