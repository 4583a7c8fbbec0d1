use std::fmt;

use thickset::chromalattice::ChromaError;
use thickset::ksengine::KsError;
use thickset::ktheory::K0Error;
use thickset::specmodel::SpecError;
use thickset::splitter::SplitError;
use thickset::zcomplex::ComplexError;

/// Malformed input exits with 2, everything the library rejects with 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain { name: &'static str, message: String },
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    pub fn domain(name: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain { name, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    fn classify(name: &'static str, message: String) -> Self {
        if name == "Format" {
            CliError::Input(message)
        } else {
            CliError::Domain { name, message }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: malformed input: {m}"),
            CliError::Domain { name, message } => write!(f, "error: {name}: {message}"),
        }
    }
}

macro_rules! from_library_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::classify(e.name(), e.to_string())
            }
        }
    )*};
}

from_library_error!(SpecError, ComplexError, KsError, SplitError, K0Error, ChromaError);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
