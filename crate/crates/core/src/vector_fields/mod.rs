//! Rational vector fields on surface charts, birational maps and the basic
//! geometric tests built on them.

mod divisor;
mod field;
mod map;
mod membership;

pub use divisor::{polar_divisor, polar_tangency_check, Divisor, TangencyReport};
pub use field::{
    first_integral_check, first_integral_check_factored, lie_bracket, wedge_collinear, SurfaceModel, VectorField,
};
pub use map::{pullback, pushforward, BirationalMap};
pub use membership::{coordinates, membership, AlgebraSpace};
