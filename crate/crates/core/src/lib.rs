//! Exact symbolic engine for deciding when a rational vector field on a rational
//! surface is birationally conjugate to a complete field, and for normalizing
//! the finite-dimensional Lie algebras such fields generate.

pub mod error;
pub mod exact_algebra;
pub mod integrability;
pub mod lie_structure;
pub mod normal_forms;
pub mod vector_fields;

pub use error::{Error, Result};
