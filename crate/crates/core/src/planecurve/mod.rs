//! Plane curves over the rationals and prime fields: local intersection
//! multiplicities (Fulton's algorithm) and the special cuspidal configuration.

mod config;
mod field;
mod fulton;
mod poly;

pub use config::{special_config, verify_special_config, SpecialConfig};
pub use field::{FieldError, FieldSpec};
pub use fulton::{intersection_multiplicity, line_meets_conic, LinePattern, Multiplicity};
pub use poly::{Exponent, HomPoly, Poly, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("`{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("(0:0:0) is not a point")]
    ZeroPoint,
    #[error("the two points coincide")]
    SamePoint,
    #[error("inputs live over different fields")]
    FieldMismatch,
    #[error("`{0}` is not a line")]
    NotALine(String),
    #[error("`{0}` is not a conic")]
    NotAConic(String),
    #[error("at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("configuration: {0}")]
    Configuration(String),
}
