//! Prime spectrum models and their thick supports.
//!
//! Two models are provided: Spec ℤ, whose supports are either the whole space
//! or a finite set of closed points, and finite prime posets standing in for
//! the spectra of graded Noetherian algebras.

pub mod catalog;
pub mod json;
mod poset;
mod support;

pub use catalog::{Catalog, CatalogEntry, ModeHint};
pub use poset::{FinitePrimePoset, PosetJson};
pub use support::{
    enumerate_thick_supports, enumerate_thick_supports_bounded, intersect_supports, up_closure,
    Point, PosetSupport, SpecModel, ThickSupport, ZSupport, DEFAULT_ENUMERATION_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("order relation has a cycle through {0} and {1}")]
    CycleDetected(String, String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("element {0} listed twice")]
    DuplicateElement(String),
    #[error("{0} is not the greatest element, so it cannot be the cone point")]
    InvalidConePoint(String),
    #[error("poset has {size} elements; enumeration is bounded at {bound}")]
    PosetTooLarge { size: usize, bound: usize },
    #[error("supports belong to different spectrum models")]
    ModelMismatch,
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("set is not specialization closed: contains {member} but not {missing}")]
    NotUpClosed { member: String, missing: String },
    #[error("unknown catalog model {0}")]
    UnknownModel(String),
    #[error("malformed poset description: {0}")]
    Format(String),
}

impl SpecError {
    pub fn name(&self) -> &'static str {
        match self {
            SpecError::CycleDetected(..) => "CycleDetected",
            SpecError::UnknownElement(_) => "UnknownElement",
            SpecError::DuplicateElement(_) => "DuplicateElement",
            SpecError::InvalidConePoint(_) => "InvalidConePoint",
            SpecError::PosetTooLarge { .. } => "PosetTooLarge",
            SpecError::ModelMismatch => "ModelMismatch",
            SpecError::NotPrime(_) => "NotPrime",
            SpecError::NotUpClosed { .. } => "NotUpClosed",
            SpecError::UnknownModel(_) => "UnknownModel",
            SpecError::Format(_) => "Format",
        }
    }
}

/// Parses and validates a poset description.
pub fn load_poset(description: &str) -> Result<FinitePrimePoset, SpecError> {
    FinitePrimePoset::from_json_str(description)
}
