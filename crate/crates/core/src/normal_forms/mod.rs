//! Normal forms of single fields and the maps that realize them.

mod borel;
mod hgamma;
mod label;
mod models;
mod plane;

pub use borel::{borel_shear, normalize_in_borel, reduce_to_tljh, rescale, shear, translate_x};
pub use hgamma::{hgamma_relate, rational_to_zero, relate_rational_to_zero, HgammaRelation};
pub use label::{ClassificationResult, NormalFormLabel};
pub use models::model_flow;
pub use plane::{classify_p2, phi_inv, phi_iso, projective_map, TracelessMatrix3};
