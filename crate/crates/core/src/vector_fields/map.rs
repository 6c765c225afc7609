use std::fmt;

use super::field::{SurfaceModel, VectorField};
use crate::error::{Error, Result};
use crate::exact_algebra::{BiPoly, BiRat, Var};

/// A birational map `(x, y) -> (f1, f2)` between affine charts, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalMap {
    pub from: SurfaceModel,
    pub to: SurfaceModel,
    pub f1: BiRat,
    pub f2: BiRat,
    inverse: (BiRat, BiRat),
}

impl BirationalMap {
    /// Builds the map, computing the inverse when each step is Moebius in one variable.
    pub fn new(from: SurfaceModel, to: SurfaceModel, f1: BiRat, f2: BiRat) -> Result<Self> {
        let inv = invert(&f1, &f2).ok_or_else(|| Error::NotBirational("no Moebius elimination order".into()))?;
        Ok(BirationalMap { from, to, f1, f2, inverse: inv })
    }

    /// Builds the map from an explicitly supplied inverse, which is verified.
    pub fn with_inverse(from: SurfaceModel, to: SurfaceModel, f1: BiRat, f2: BiRat, g1: BiRat, g2: BiRat) -> Result<Self> {
        if !is_identity(&f1, &f2, &g1, &g2) || !is_identity(&g1, &g2, &f1, &f2) {
            return Err(Error::NotBirational("supplied inverse does not compose to the identity".into()));
        }
        Ok(BirationalMap { from, to, f1, f2, inverse: (g1, g2) })
    }

    /// Skips verification; the caller guarantees the inverse.
    pub(crate) fn trusted(from: SurfaceModel, to: SurfaceModel, f1: BiRat, f2: BiRat, g1: BiRat, g2: BiRat) -> Self {
        debug_assert!(is_identity(&f1, &f2, &g1, &g2), "trusted inverse is wrong");
        BirationalMap { from, to, f1, f2, inverse: (g1, g2) }
    }

    pub fn identity(s: SurfaceModel) -> Self {
        BirationalMap { from: s, to: s, f1: BiRat::x(), f2: BiRat::y(), inverse: (BiRat::x(), BiRat::y()) }
    }

    /// `(x, y) -> (y, x)`.
    pub fn swap(s: SurfaceModel) -> Self {
        BirationalMap { from: s, to: s, f1: BiRat::y(), f2: BiRat::x(), inverse: (BiRat::y(), BiRat::x()) }
    }

    pub fn inverse_components(&self) -> (&BiRat, &BiRat) {
        (&self.inverse.0, &self.inverse.1)
    }

    pub fn inverse(&self) -> BirationalMap {
        BirationalMap {
            from: self.to,
            to: self.from,
            f1: self.inverse.0.clone(),
            f2: self.inverse.1.clone(),
            inverse: (self.f1.clone(), self.f2.clone()),
        }
    }

    pub fn relabel(&self, from: SurfaceModel, to: SurfaceModel) -> Self {
        BirationalMap { from, to, ..self.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.f1 == BiRat::x() && self.f2 == BiRat::y()
    }

    /// `self o g`: apply `g` first.
    pub fn compose(&self, g: &BirationalMap) -> Result<BirationalMap> {
        if g.to != self.from {
            return Err(Error::SurfaceMismatch);
        }
        let f1 = self.f1.compose(&g.f1, &g.f2)?;
        let f2 = self.f2.compose(&g.f1, &g.f2)?;
        let (a1, a2) = &g.inverse;
        let i1 = a1.compose(&self.inverse.0, &self.inverse.1)?;
        let i2 = a2.compose(&self.inverse.0, &self.inverse.1)?;
        Ok(BirationalMap { from: g.from, to: self.to, f1, f2, inverse: (i1, i2) })
    }

    /// `F o self`.
    pub fn pull_function(&self, f: &BiRat) -> Result<BiRat> {
        f.compose(&self.f1, &self.f2)
    }

    pub fn jacobian(&self) -> BiRat {
        &self.f1.dx() * &self.f2.dy() - &self.f1.dy() * &self.f2.dx()
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

fn is_identity(f1: &BiRat, f2: &BiRat, g1: &BiRat, g2: &BiRat) -> bool {
    matches!(f1.compose(g1, g2), Ok(h) if h == BiRat::x()) && matches!(f2.compose(g1, g2), Ok(h) if h == BiRat::y())
}

/// Solves `u = F` for the variable `w`, giving `w` as a function of
/// `(other variable, u)` placed in the `(x, y)` slots.
fn solve_mobius(f: &BiRat, w: Var) -> Option<BiRat> {
    let [a, b, c, d] = f.mobius_in(w)?;
    let slot = |p: &BiPoly| match w {
        Var::Y => p.clone(),
        Var::X => p.transpose(),
    };
    let (a, b, c, d) = (slot(&a), slot(&b), slot(&c), slot(&d));
    let u = BiPoly::y();
    let num = &(&d * &u) - &b;
    let den = &a - &(&c * &u);
    BiRat::normalize(num, den).ok()
}

/// Inverse when `f1` is Moebius in `y` and then the remaining equation is Moebius in `x`.
fn invert_basic(f1: &BiRat, f2: &BiRat) -> Option<(BiRat, BiRat)> {
    let a = solve_mobius(f1, Var::Y)?;
    let g = f2.compose(&BiRat::x(), &a).ok()?;
    let b = solve_mobius(&g, Var::X)?;
    let y = a.compose(&b, &BiRat::x()).ok()?;
    Some((b, y))
}

fn invert(f1: &BiRat, f2: &BiRat) -> Option<(BiRat, BiRat)> {
    let attempts: [&dyn Fn() -> Option<(BiRat, BiRat)>; 4] = [
        &|| invert_basic(f1, f2),
        &|| invert_basic(&f1.transpose(), &f2.transpose()).map(|(h1, h2)| (h2, h1)),
        &|| invert_basic(f2, f1).map(|(h1, h2)| (h1.transpose(), h2.transpose())),
        &|| {
            invert_basic(&f2.transpose(), &f1.transpose()).map(|(h1, h2)| (h2.transpose(), h1.transpose()))
        },
    ];
    for attempt in attempts {
        if let Some((g1, g2)) = attempt() {
            if is_identity(f1, f2, &g1, &g2) && is_identity(&g1, &g2, f1, f2) {
                return Some((g1, g2));
            }
        }
    }
    None
}

/// `f^* Y = (Df)^{-1} (Y o f)`.
pub fn pullback(y: &VectorField, f: &BirationalMap) -> Result<VectorField> {
    if y.surface != f.to {
        return Err(Error::SurfaceMismatch);
    }
    let j = f.jacobian();
    if j.is_zero() {
        return Err(Error::NotBirational("Jacobian vanishes identically".into()));
    }
    let y1 = y.px.compose(&f.f1, &f.f2)?;
    let y2 = y.py.compose(&f.f1, &f.f2)?;
    let (a, b, c, d) = (f.f1.dx(), f.f1.dy(), f.f2.dx(), f.f2.dy());
    let p = &(&d * &y1) - &(&b * &y2);
    let q = &(&a * &y2) - &(&c * &y1);
    let jinv = j.inv()?;
    Ok(VectorField::new(f.from, &p * &jinv, &q * &jinv))
}

/// `f_* X`, the pullback by the inverse.
pub fn pushforward(x: &VectorField, f: &BirationalMap) -> Result<VectorField> {
    pullback(x, &f.inverse())
}
