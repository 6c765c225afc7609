//! Finite-dimensional algebras of vector fields.

mod algebra;
mod catalog;
mod sl2;
mod two_dim;

pub use algebra::{derived_series, is_solvable_by_series, killing_report, structure_constants, AlgebraPresentation, DerivedTerm, KillingReport};
pub use catalog::{builtin_catalog, g0_basis, g2tilde_basis, g4tilde_basis, gn_basis, CatalogName};
pub use sl2::{sl2_complete, sl2_complete_with, verify_sl2_triple, Sl2Model, Sl2Verdict};
pub use two_dim::{classify_2dim, spans_equal, TwoDimClassification, TwoDimLabel};
