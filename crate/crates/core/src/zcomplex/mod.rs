//! Perfect complexes over ℤ and the homological algebra needed to compute
//! their supports.

mod complex;
mod group;
pub mod json;

use num_bigint::BigInt;

use crate::intlin::IntLinError;
use crate::specmodel::ZSupport;

pub use complex::{
    derived_hom_vanishes, hom_ext_witness, mapping_cone, moore_complex, realize, ChainMap,
    HomExtKind, HomExtWitness, PerfectComplexZ,
};
pub use group::{ext_group, hom_group, FgAbGroup, HomologyProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("d_{degree} has shape {found:?}, expected {expected:?}")]
    DimensionMismatch { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d_{} d_{degree} is not zero", degree - 1)]
    NotAComplex { degree: i64 },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("component f_{degree} has shape {found:?}, expected {expected:?}")]
    ChainMapShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("Moore complex M({0}) needs n >= 2")]
    InvalidMooreOrder(BigInt),
    #[error("prime {0} is too large to name a closed point")]
    PrimeOutOfRange(BigInt),
    #[error("matrix error: {0}")]
    Matrix(#[from] IntLinError),
    #[error("malformed complex: {0}")]
    Format(String),
}

impl ComplexError {
    pub fn name(&self) -> &'static str {
        match self {
            ComplexError::DimensionMismatch { .. } => "DimensionMismatch",
            ComplexError::NotAComplex { .. } => "NotAComplex",
            ComplexError::NotChainMap { .. } => "NotChainMap",
            ComplexError::ChainMapShape { .. } => "ChainMapShape",
            ComplexError::InvalidMooreOrder(_) => "InvalidMooreOrder",
            ComplexError::PrimeOutOfRange(_) => "PrimeOutOfRange",
            ComplexError::Matrix(e) => e.name(),
            ComplexError::Format(_) => "Format",
        }
    }
}

pub fn validate(c: &PerfectComplexZ) -> Result<(), ComplexError> {
    c.validate()
}

pub fn homology(c: &PerfectComplexZ) -> HomologyProfile {
    c.homology()
}

pub fn support(c: &PerfectComplexZ) -> Result<ZSupport, ComplexError> {
    c.support()
}

pub fn dual(c: &PerfectComplexZ) -> PerfectComplexZ {
    c.dual()
}

pub fn direct_sum(a: &PerfectComplexZ, b: &PerfectComplexZ) -> PerfectComplexZ {
    a.direct_sum(b)
}

/// Support of a homology profile, as for the complex realizing it.
pub fn support_of_homology(h: &HomologyProfile) -> Result<ZSupport, ComplexError> {
    complex::support_of(h)
}
