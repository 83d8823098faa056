//! Exact slope-stability computations for surfaces given by numerical data.

pub mod catalog;
pub mod constructor;
pub mod error;
pub mod exceptional;
pub mod format;
pub mod lattice;
pub mod quad;
pub mod rational;
pub mod scan;
pub mod reduction;
pub mod search;
pub mod slope;
pub mod suite;
pub mod zerodim;

pub use error::{Error, Result};
pub use lattice::{CurveRecord, DivClass, ModelParts, NamedClass, Positivity, PositivityVerdict, SurfaceModel};
pub use quad::QuadBound;
pub use rational::Q;
