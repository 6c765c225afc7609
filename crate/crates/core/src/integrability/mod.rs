//! Birational integrability of fields tangent to a rational fibration.

mod adapt;
mod flow;
mod quadratic;
mod symbolic;

pub use adapt::{adapt_to_fibration, Adaptation};
pub use flow::{vertical_flow, Flow};
pub use quadratic::{
    extract_quadratic, integrability_test, IntegrabilityReport, Mat2, Obstruction, Verdict, VerticalModel,
    VerticalQuadratic,
};
pub use symbolic::{Sym, SymFrac, SymPoly};
