//! Exact-arithmetic workbench for klt dual graphs, Noether-type Diophantine
//! searches, Picard-lattice blow-up constructions and plane-curve
//! intersection multiplicities.

pub mod diophantine;
pub mod dualgraph;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod planecurve;
pub mod rational;
pub mod report;
pub mod verify;

pub use dualgraph::{parse_dynkin, BoundaryIncidence, DiscrepancyVector, DualGraph, DynkinType, Shape};
pub use lattice::{BaseSurface, Script, SingularModel, SurfaceState};
pub use planecurve::{FieldSpec, HomPoly, Multiplicity, ProjPoint};
pub use rational::Rational;
pub use report::{CheckRecord, Report, Status};
pub use verify::verify_all;
