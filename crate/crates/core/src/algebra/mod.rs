//! Lie-algebra description of a reductive homogeneous space `G/H` and the
//! tensors it induces at the origin.

mod model;
mod structure;
mod tensors;
mod validate;

pub use model::{InvariantVector, ReductiveModel};
pub use structure::StructureConstants;
pub use tensors::{
    christoffel_formula, christoffel_origin, origin_tensors, s0_r00, Christoffel, OriginTensors,
};
pub use validate::{bracket_m, validate_model, Check, ValidationReport, CHECK_TOL};
