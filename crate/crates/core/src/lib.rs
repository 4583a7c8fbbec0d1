//! Krull-Schmidt decompositions of thick subcategories, computed on their
//! supports.
//!
//! The crate works with two kinds of spectra: Spec ℤ, where supports of
//! perfect complexes are computed from integer homology, and finite prime
//! posets standing in for the spectra of graded cohomology rings.

pub mod arith;
pub mod chromalattice;
pub mod intlin;
pub mod ksengine;
pub mod ktheory;
pub mod specmodel;
pub mod splitter;
pub mod zcomplex;

pub use num_bigint::BigInt;

pub type IntMatrix = intlin::Matrix<BigInt>;
pub type SmithDecomposition = intlin::SmithForm<BigInt>;
pub type Cokernel = intlin::CokernelInvariants<BigInt>;

pub use chromalattice::SpectraThick;
pub use ksengine::{DecompositionMode, KSDecomposition, SupportGraph};
pub use ktheory::K0Class;
pub use specmodel::{FinitePrimePoset, SpecModel, ThickSupport, ZSupport};
pub use splitter::SplitResult;
pub use zcomplex::{ChainMap, FgAbGroup, HomologyProfile, PerfectComplexZ};
