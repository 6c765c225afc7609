use crate::error::{Error, Result};
use crate::exact_algebra::{BiRat, Var};
use crate::vector_fields::{first_integral_check, pushforward, BirationalMap, VectorField};

/// A chart in which the first integral is the base coordinate.
#[derive(Clone, Debug)]
pub struct Adaptation {
    /// `psi`, sending the old chart to the adapted one.
    pub map: BirationalMap,
    /// `psi_* X`, vertical in the new chart.
    pub field: VectorField,
}

/// Straightens the fibration `{F = const}` into the vertical one.
///
/// When `F` is Moebius in `y` the new coordinates are `(F, x)`, when it is
/// Moebius in `x` they are `(F, y)`.
pub fn adapt_to_fibration(x: &VectorField, f: &BiRat) -> Result<Adaptation> {
    if !first_integral_check(x, f)? {
        return Err(Error::NotAFirstIntegral);
    }
    let fiber = if f.mobius_in(Var::Y).is_some() {
        BiRat::x()
    } else if f.mobius_in(Var::X).is_some() {
        BiRat::y()
    } else {
        return Err(Error::CannotAdapt);
    };
    let s = x.surface;
    let map = BirationalMap::new(s, s, f.clone(), fiber)?;
    let field = pushforward(x, &map)?;
    if !field.is_vertical() {
        return Err(Error::InvariantViolation(format!("adapted field {} is not vertical", field)));
    }
    Ok(Adaptation { map, field })
}
