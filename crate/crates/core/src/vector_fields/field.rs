use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact_algebra::{paren, BiPoly, BiRat, Scalar};

/// Birational models of the rational surfaces in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceModel {
    P2,
    /// Hirzebruch surface `F_n`; `F_0` is `P1 x P1`.
    F(u32),
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::P2 => write!(f, "P2"),
            SurfaceModel::F(n) => write!(f, "F{}", n),
        }
    }
}

impl std::str::FromStr for SurfaceModel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        if t == "p2" {
            return Ok(SurfaceModel::P2);
        }
        t.strip_prefix('f')
            .and_then(|n| n.parse::<u32>().ok())
            .map(SurfaceModel::F)
            .ok_or_else(|| format!("unknown surface `{}`", s))
    }
}

/// `px d/dx + py d/dy` in the affine chart of a surface model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub surface: SurfaceModel,
    pub px: BiRat,
    pub py: BiRat,
}

impl VectorField {
    pub fn new(surface: SurfaceModel, px: BiRat, py: BiRat) -> Self {
        VectorField { surface, px, py }
    }

    pub fn zero(surface: SurfaceModel) -> Self {
        VectorField::new(surface, BiRat::zero(), BiRat::zero())
    }

    /// Polynomial field from integer `(coefficient, i, j)` terms.
    pub fn from_terms(surface: SurfaceModel, px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]) -> Self {
        VectorField::new(
            surface,
            BiRat::from_poly(BiPoly::from_int_terms(px)),
            BiRat::from_poly(BiPoly::from_int_terms(py)),
        )
    }

    pub fn d_x(surface: SurfaceModel) -> Self {
        VectorField::new(surface, BiRat::one(), BiRat::zero())
    }

    pub fn d_y(surface: SurfaceModel) -> Self {
        VectorField::new(surface, BiRat::zero(), BiRat::one())
    }

    /// `h d/dy`.
    pub fn vertical(surface: SurfaceModel, h: BiRat) -> Self {
        VectorField::new(surface, BiRat::zero(), h)
    }

    pub fn on(&self, surface: SurfaceModel) -> Self {
        VectorField { surface, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.px.is_zero() && self.py.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.px.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.px.is_poly() && self.py.is_poly()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        VectorField::new(self.surface, self.px.scale(s), self.py.scale(s))
    }

    /// Multiplication by a function.
    pub fn times(&self, f: &BiRat) -> Self {
        VectorField::new(self.surface, &self.px * f, &self.py * f)
    }

    /// Derivation `F -> X(F)`.
    pub fn apply(&self, f: &BiRat) -> BiRat {
        let mut acc = BiRat::zero();
        if !self.px.is_zero() {
            acc = &self.px * &f.dx();
        }
        if !self.py.is_zero() {
            acc = &acc + &(&self.py * &f.dy());
        }
        acc
    }

    /// Exchanges the two coordinates.
    pub fn transpose(&self) -> Self {
        VectorField::new(self.surface, self.py.transpose(), self.px.transpose())
    }

    /// Linear combination `sum c_k X_k`.
    pub fn combination(coeffs: &[Scalar], fields: &[VectorField]) -> Self {
        assert_eq!(coeffs.len(), fields.len());
        let surface = fields.first().map_or(SurfaceModel::F(0), |f| f.surface);
        let mut acc = VectorField::zero(surface);
        for (c, f) in coeffs.iter().zip(fields) {
            if !c.is_zero() {
                acc = &acc + &f.scale(c);
            }
        }
        acc
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, o: &VectorField) -> VectorField {
        VectorField::new(self.surface, &self.px + &o.px, &self.py + &o.py)
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, o: &VectorField) -> VectorField {
        VectorField::new(self.surface, &self.px - &o.px, &self.py - &o.py)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(self.surface, -&self.px, -&self.py)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: &BiRat, d: &str| {
            if c.is_one() {
                d.to_string()
            } else {
                format!("{} {}", paren(&c.to_string()), d)
            }
        };
        match (self.px.is_zero(), self.py.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", part(&self.px, "d/dx")),
            (true, false) => write!(f, "{}", part(&self.py, "d/dy")),
            (false, false) => write!(f, "{} + {}", part(&self.px, "d/dx"), part(&self.py, "d/dy")),
        }
    }
}

/// `[X, Y]` with components `X(Y^i) - Y(X^i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.surface != y.surface {
        return Err(Error::SurfaceMismatch);
    }
    Ok(VectorField::new(
        x.surface,
        &x.apply(&y.px) - &y.apply(&x.px),
        &x.apply(&y.py) - &y.apply(&x.py),
    ))
}

/// True when the two fields are everywhere parallel.
pub fn wedge_collinear(x: &VectorField, y: &VectorField) -> bool {
    (&x.px * &y.py - &x.py * &y.px).is_zero()
}

/// Checks `X(F) = 0` for a nonconstant `F`.
pub fn first_integral_check(x: &VectorField, f: &BiRat) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::ConstantIntegral);
    }
    Ok(x.apply(f).is_zero())
}

/// Checks `X(F) = 0` for `F = prod f_k^{m_k}` through its logarithmic derivative.
pub fn first_integral_check_factored(x: &VectorField, factors: &[(BiPoly, i64)]) -> Result<bool> {
    let live: Vec<&(BiPoly, i64)> = factors.iter().filter(|(f, m)| *m != 0 && !f.is_constant()).collect();
    if live.is_empty() {
        return Err(Error::ConstantIntegral);
    }
    let mut acc = BiRat::zero();
    for (f, m) in live {
        let fr = BiRat::from_poly(f.clone());
        let term = &x.apply(&fr) / &fr;
        acc = &acc + &term.scale(&Scalar::from_i64(*m));
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: SurfaceModel = SurfaceModel::F(0);

    fn vf(px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(S, px, py)
    }

    #[test]
    fn bracket_examples() {
        let b = lie_bracket(&vf(&[], &[(1, 1, 0)]), &vf(&[], &[(1, 0, 2)])).unwrap();
        assert_eq!(b, vf(&[], &[(2, 1, 1)]));
        let dy = vf(&[], &[(1, 0, 0)]);
        let ydy = vf(&[], &[(1, 0, 1)]);
        let y2dy = vf(&[], &[(1, 0, 2)]);
        assert_eq!(lie_bracket(&dy, &ydy).unwrap(), dy);
        assert_eq!(lie_bracket(&dy, &y2dy).unwrap(), vf(&[], &[(2, 0, 1)]));
        assert_eq!(lie_bracket(&ydy, &y2dy).unwrap(), y2dy);
        let other = dy.on(SurfaceModel::P2);
        assert!(matches!(lie_bracket(&dy, &other), Err(Error::SurfaceMismatch)));
    }

    #[test]
    fn first_integrals() {
        // x^2 d/dx - y(x - 2y) d/dy with F = x^2 y / (x - y)
        let x = vf(&[(1, 2, 0)], &[(-1, 1, 1), (2, 0, 2)]);
        let f = BiRat::new(BiPoly::from_int_terms(&[(1, 2, 1)]), BiPoly::from_int_terms(&[(1, 1, 0), (-1, 0, 1)]));
        assert!(first_integral_check(&x, &f).unwrap());
        let fac = [(BiPoly::x(), 2), (BiPoly::y(), 1), (BiPoly::from_int_terms(&[(1, 1, 0), (-1, 0, 1)]), -1)];
        assert!(first_integral_check_factored(&x, &fac).unwrap());
        let dy = vf(&[], &[(1, 0, 0)]);
        assert!(!first_integral_check(&dy, &BiRat::y()).unwrap());
        assert!(matches!(first_integral_check(&dy, &BiRat::from_i64(3)), Err(Error::ConstantIntegral)));
    }

    #[test]
    fn quotient_exponent_integral() {
        // x d/dx + (p/q) y d/dy with F = x^p / y^q, p = 2, q = 3
        let x = VectorField::new(S, BiRat::x(), BiRat::y().scale(&Scalar::from_ratio(2, 3)));
        let f = BiRat::new(BiPoly::from_int_terms(&[(1, 2, 0)]), BiPoly::from_int_terms(&[(1, 0, 3)]));
        assert!(first_integral_check(&x, &f).unwrap());
    }

    #[test]
    fn collinearity() {
        assert!(wedge_collinear(&vf(&[], &[(1, 0, 0)]), &vf(&[], &[(1, 1, 0)])));
        assert!(!wedge_collinear(&vf(&[(1, 0, 0)], &[]), &vf(&[], &[(1, 0, 0)])));
    }
}
