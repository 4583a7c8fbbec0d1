//! Splitting a perfect complex over ℤ along the pieces of its support.
//!
//! Every complex over ℤ is quasi-isomorphic to its shifted homology, so each
//! piece is returned as the canonical realization of the part of the
//! homology living over that piece.

use std::collections::BTreeSet;

use serde_json::{Map, Value};

use crate::ksengine::{ks_decompose, DecompositionMode, KsError};
use crate::specmodel::json::support_to_value;
use crate::specmodel::{ThickSupport, ZSupport};
use crate::zcomplex::json::complex_to_value;
use crate::zcomplex::{
    realize, support_of_homology, ComplexError, HomologyProfile, PerfectComplexZ,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("complex is acyclic, nothing to split")]
    ZeroComplex,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Ks(#[from] KsError),
}

impl SplitError {
    pub fn name(&self) -> &'static str {
        match self {
            SplitError::ZeroComplex => "ZeroComplex",
            SplitError::Complex(e) => e.name(),
            SplitError::Ks(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPiece {
    pub component: ZSupport,
    pub complex: PerfectComplexZ,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitResult {
    pub pieces: Vec<SplitPiece>,
}

impl SplitResult {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Direct sum of all pieces.
    pub fn total(&self) -> PerfectComplexZ {
        self.pieces.iter().fold(PerfectComplexZ::zero(), |acc, p| acc.direct_sum(&p.complex))
    }

    /// `[{"primes": ..., "complex": ...}, ...]`.
    pub fn to_value(&self) -> Value {
        Value::Array(
            self.pieces
                .iter()
                .map(|p| {
                    let mut o = Map::new();
                    o.insert("primes".into(), support_to_value(&p.component.clone().into()));
                    o.insert("complex".into(), complex_to_value(&p.complex));
                    Value::Object(o)
                })
                .collect(),
        )
    }
}

fn restrict(h: &HomologyProfile, component: &ZSupport) -> HomologyProfile {
    match component {
        ZSupport::Whole => h.clone(),
        ZSupport::Closed(ps) => h.restrict_to_primes(ps),
    }
}

/// Splits `c` into pieces with pairwise disjoint indecomposable supports.
pub fn split_complex(c: &PerfectComplexZ) -> Result<SplitResult, SplitError> {
    let h = c.homology();
    let support = support_of_homology(&h)?;
    if support.is_empty() {
        return Err(SplitError::ZeroComplex);
    }
    let decomposition = ks_decompose(&support.into(), &DecompositionMode::Plain)?;
    let pieces = decomposition
        .into_components()
        .into_iter()
        .map(|component| {
            let component = component.as_integers().cloned().expect("integer support");
            let complex = realize(&restrict(&h, &component));
            SplitPiece { component, complex }
        })
        .collect();
    Ok(SplitResult { pieces })
}

/// The first way in which a proposed splitting fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitViolation {
    #[error("piece {index} is labelled {claimed} but has support {actual}")]
    SupportMismatch { index: usize, claimed: ZSupport, actual: ZSupport },
    #[error("pieces {first} and {second} have overlapping supports")]
    SupportsOverlap { first: usize, second: usize },
    #[error("piece {index} does not carry the homology of the input over its component")]
    PieceHomologyMismatch { index: usize },
    #[error("pieces sum to homology {found}, expected {expected}")]
    HomologyNotExhausted { expected: HomologyProfile, found: HomologyProfile },
    #[error("components are not the Krull-Schmidt pieces of the support")]
    ComponentsNotKS,
    #[error("{0}")]
    Invalid(String),
}

impl SplitViolation {
    pub fn name(&self) -> &'static str {
        match self {
            SplitViolation::SupportMismatch { .. } => "SupportMismatch",
            SplitViolation::SupportsOverlap { .. } => "SupportsOverlap",
            SplitViolation::PieceHomologyMismatch { .. } => "PieceHomologyMismatch",
            SplitViolation::HomologyNotExhausted { .. } => "HomologyNotExhausted",
            SplitViolation::ComponentsNotKS => "ComponentsNotKS",
            SplitViolation::Invalid(_) => "Invalid",
        }
    }
}

/// Checks that `r` is a splitting of `c`.
pub fn verify_split(c: &PerfectComplexZ, r: &SplitResult) -> Result<(), SplitViolation> {
    let invalid = |e: &dyn std::fmt::Display| SplitViolation::Invalid(e.to_string());
    for (index, piece) in r.pieces.iter().enumerate() {
        piece.complex.validate().map_err(|e| invalid(&e))?;
        let actual = piece.complex.support().map_err(|e| invalid(&e))?;
        if actual != piece.component {
            return Err(SplitViolation::SupportMismatch {
                index,
                claimed: piece.component.clone(),
                actual,
            });
        }
    }
    for (second, b) in r.pieces.iter().enumerate() {
        for (first, a) in r.pieces[..second].iter().enumerate() {
            if !a.component.intersect(&b.component).is_empty() {
                return Err(SplitViolation::SupportsOverlap { first, second });
            }
        }
    }
    let h = c.homology();
    for (index, piece) in r.pieces.iter().enumerate() {
        if piece.complex.homology() != restrict(&h, &piece.component) {
            return Err(SplitViolation::PieceHomologyMismatch { index });
        }
    }
    let found = r.total().homology();
    if found != h {
        return Err(SplitViolation::HomologyNotExhausted { expected: h, found });
    }
    let support = support_of_homology(&h).map_err(|e| invalid(&e))?;
    let expected: BTreeSet<ZSupport> = match ks_decompose(&support.into(), &DecompositionMode::Plain) {
        Ok(d) => d.components().iter().filter_map(|s| s.as_integers().cloned()).collect(),
        Err(KsError::EmptySupport) => BTreeSet::new(),
        Err(e) => return Err(invalid(&e)),
    };
    let got: BTreeSet<ZSupport> = r.pieces.iter().map(|p| p.component.clone()).collect();
    if got != expected || got.len() != r.pieces.len() {
        return Err(SplitViolation::ComponentsNotKS);
    }
    Ok(())
}

/// The pieces' supports as thick supports, in order.
pub fn piece_supports(r: &SplitResult) -> Vec<ThickSupport> {
    r.pieces.iter().map(|p| p.component.clone().into()).collect()
}
