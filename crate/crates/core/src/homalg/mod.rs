//! Bounded complexes of free modules over the Laurent ring and the
//! pointwise decision procedures used on them.

mod complex;
mod koszul;
mod matrix;
mod probe;

use alloc::string::String;
use core::fmt;

pub use complex::{compose, cone, cone_map, ChainMap, Cone, FreeComplex};
pub use koszul::{koszul, skyscraper, wedge_homotopy, Homotopy};
pub use matrix::PolyMatrix;
pub use probe::{
    homology_ranks_at, pants_panel, random_points, specialize, HomologyRanks, ProbeSet, ScalarComplex, Witness,
};

pub(crate) use complex::merge_hints;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomalgError {
    Shape(String),
    NotAComplex { degree: i64 },
    NotAChainMap { degree: i64 },
    EndpointMismatch,
    VarCount,
}

impl fmt::Display for HomalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomalgError::Shape(m) => write!(f, "shape mismatch: {}", m),
            HomalgError::NotAComplex { degree } => write!(f, "d² ≠ 0 at degree {}", degree),
            HomalgError::NotAChainMap { degree } => {
                write!(f, "map does not commute with differentials at degree {}", degree)
            }
            HomalgError::EndpointMismatch => write!(f, "endpoint mismatch"),
            HomalgError::VarCount => write!(f, "variable count mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for HomalgError {}
