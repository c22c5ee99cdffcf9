//! Intersection lattices of blown-up surfaces, contractions to singular
//! models, and a small scripting language for constructions.

mod model;
pub mod script;
mod surface;

pub use model::{ContractedComponent, SingularModel};
pub use script::{run_script_file, Construction, Script, ScriptError};
pub use surface::{BaseSurface, BlowUpRecord, SurfaceState, TrackedCurve};

use crate::dualgraph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve `{0}` already exists")]
    DuplicateCurve(String),
    #[error("curve `{name}` has genus {actual}, expected {expected}")]
    GenusMismatch { name: String, expected: i64, actual: i64 },
    #[error("curve `{name}` would have negative genus {genus}")]
    NegativeGenus { name: String, genus: i64 },
    #[error("class {class:?} has non-integral arithmetic genus")]
    NonIntegralGenus { class: Vec<i64> },
    #[error("class needs at most {base} base and {exceptional} exceptional coefficients, got {got:?}")]
    ClassLength { base: usize, exceptional: usize, got: (usize, usize) },
    #[error("zero multiplicity for `{0}`")]
    ZeroMultiplicity(String),
    #[error("curve `{0}` listed twice in one blow-up")]
    RepeatedIncidence(String),
    #[error("invalid base surface: {0}")]
    InvalidBase(String),
    #[error("curve `{0}` is contracted")]
    Contracted(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContractError {
    #[error("curve `{0}` listed twice")]
    Duplicate(String),
    #[error("unknown curve `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Lattice(LatticeError),
    #[error("curve `{curve}` has genus {genus}; only rational curves can be contracted")]
    Genus { curve: String, genus: i64 },
    #[error("curve `{curve}` has self-intersection {value}; need at most -2")]
    SelfIntersection { curve: String, value: i64 },
    #[error("curves `{a}` and `{b}` meet with intersection {value}; need 0 or 1")]
    Pairing { a: String, b: String, value: i64 },
    #[error("curves {0:?} form a cycle")]
    Cycle(Vec<String>),
    #[error(transparent)]
    Graph(GraphError),
    #[error("curves {0:?} are not negative definite")]
    NotNegativeDefinite(Vec<String>),
}
