//! Vertical quadratic fields `(a y^2 + 2b y + c) d/dy`, their `sl2(k(x))` matrices,
//! and the discriminant test for birational integrability.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{BiRat, FieldContext, Poly, Scalar, UniRat};
use crate::vector_fields::{pullback, BirationalMap, SurfaceModel, VectorField};

/// `h = a y^2 + 2 b y + c` with coefficients in `k(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalQuadratic {
    pub a: UniRat,
    pub b: UniRat,
    pub c: UniRat,
}

/// Why a vertical field fails to be birationally integrable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The fiber component has poles along a non-vertical curve.
    NotPolynomialInY,
    /// The fiber component has this degree in `y`, above 2.
    DegreeInY(usize),
    /// The discriminant `b^2 - ac` depends on `x`.
    NonConstantDiscriminant,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NotPolynomialInY => write!(f, "not polynomial in y"),
            Obstruction::DegreeInY(d) => write!(f, "degree {} in y", d),
            Obstruction::NonConstantDiscriminant => write!(f, "discriminant is not constant"),
        }
    }
}

impl VerticalQuadratic {
    pub fn new(a: UniRat, b: UniRat, c: UniRat) -> Self {
        VerticalQuadratic { a, b, c }
    }

    pub fn delta(&self) -> UniRat {
        &(&self.b * &self.b) - &(&self.a * &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// `h(x, y)` as a rational function.
    pub fn h(&self) -> BiRat {
        let two_b = self.b.scale(&Scalar::from_i64(2));
        BiRat::from_y_poly(&[self.c.clone(), two_b, self.a.clone()])
    }

    pub fn to_field(&self, s: SurfaceModel) -> VectorField {
        VectorField::vertical(s, self.h())
    }

    /// `[[b, c], [-a, -b]]`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new([[self.b.clone(), self.c.clone()], [-&self.a, -&self.b]])
    }

    /// The field of a matrix, ignoring its trace part.
    pub fn from_matrix(m: &Mat2) -> Self {
        let [[p, q], [r, s]] = &m.e;
        let half = Scalar::from_ratio(1, 2);
        VerticalQuadratic { a: -r, b: (p - s).scale(&half), c: q.clone() }
    }
}

impl fmt::Display for VerticalQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) y^2 + 2*({}) y + ({})", self.a, self.b, self.c)
    }
}

/// Extracts `(a, b, c)` from a vertical field, or the reason it has no such form.
pub fn extract_quadratic(x: &VectorField) -> Result<std::result::Result<VerticalQuadratic, Obstruction>> {
    if !x.is_vertical() {
        return Err(Error::NotVertical);
    }
    let coeffs = match x.py.as_y_poly() {
        Some(c) => c,
        None => return Ok(Err(Obstruction::NotPolynomialInY)),
    };
    if coeffs.len() > 3 {
        return Ok(Err(Obstruction::DegreeInY(coeffs.len() - 1)));
    }
    let get = |j: usize| coeffs.get(j).cloned().unwrap_or_default();
    Ok(Ok(VerticalQuadratic { a: get(2), b: get(1).scale(&Scalar::from_ratio(1, 2)), c: get(0) }))
}

/// A 2x2 matrix over `k(x)`, acting on the fiber coordinate by Moebius substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub e: [[UniRat; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[UniRat; 2]; 2]) -> Self {
        Mat2 { e }
    }

    pub fn identity() -> Self {
        Mat2::new([[UniRat::one(), UniRat::zero()], [UniRat::zero(), UniRat::one()]])
    }

    pub fn from_columns(c1: [UniRat; 2], c2: [UniRat; 2]) -> Self {
        let [a, c] = c1;
        let [b, d] = c2;
        Mat2::new([[a, b], [c, d]])
    }

    pub fn det(&self) -> UniRat {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn adjugate(&self) -> Mat2 {
        let [[a, b], [c, d]] = &self.e;
        Mat2::new([[d.clone(), -b], [-c, a.clone()]])
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.adjugate().scale(&d.inv()))
    }

    pub fn scale(&self, s: &UniRat) -> Mat2 {
        let f = |u: &UniRat| u * s;
        let [[a, b], [c, d]] = &self.e;
        Mat2::new([[f(a), f(b)], [f(c), f(d)]])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let g = |i: usize, j: usize| &(&self.e[i][0] * &o.e[0][j]) + &(&self.e[i][1] * &o.e[1][j]);
        Mat2::new([[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]])
    }

    pub fn apply(&self, v: &[UniRat; 2]) -> [UniRat; 2] {
        [&(&self.e[0][0] * &v[0]) + &(&self.e[0][1] * &v[1]), &(&self.e[1][0] * &v[0]) + &(&self.e[1][1] * &v[1])]
    }

    /// `A^{-1} M A`: the matrix of the pullback of the field of `M` by the Moebius map of `A`.
    pub fn conjugate(&self, m: &Mat2) -> Result<Mat2> {
        Ok(self.inverse()?.mul(m).mul(self))
    }

    /// `(x, y) -> (x, (a y + b)/(c y + d))`.
    pub fn mobius_map(&self, s: SurfaceModel) -> Result<BirationalMap> {
        if self.det().is_zero() {
            return Err(Error::NotBirational("singular matrix".into()));
        }
        let act = |m: &Mat2| {
            let [[a, b], [c, d]] = &m.e;
            let y = BiRat::y();
            let num = &(&BiRat::from_unirat(a) * &y) + &BiRat::from_unirat(b);
            let den = &(&BiRat::from_unirat(c) * &y) + &BiRat::from_unirat(d);
            &num / &den
        };
        Ok(BirationalMap::trusted(s, s, BiRat::x(), act(self), BiRat::x(), act(&self.adjugate())))
    }

    /// Multiplies by the common denominator of the entries; projectively the same map.
    pub fn clear_denominators(&self) -> [[Poly; 2]; 2] {
        let mut l = Poly::one();
        for row in &self.e {
            for u in row {
                l = l.lcm(u.den());
            }
        }
        let f = |u: &UniRat| (u.num() * &l).div_exact(u.den()).expect("lcm of denominators");
        let [[a, b], [c, d]] = &self.e;
        [[f(a), f(b)], [f(c), f(d)]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.e;
        write!(f, "[[{}, {}], [{}, {}]]", a, b, c, d)
    }
}

/// The two vertical models reached by a regularizing conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerticalModel {
    /// `d/dy`.
    T,
    /// A multiple of `y d/dy`.
    L,
}

impl fmt::Display for VerticalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerticalModel::T => write!(f, "T"),
            VerticalModel::L => write!(f, "L"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Integrable,
    NotIntegrable(Obstruction),
}

#[derive(Clone, Debug)]
pub struct IntegrabilityReport {
    pub verdict: Verdict,
    pub quadratic: Option<VerticalQuadratic>,
    pub delta: Option<UniRat>,
    pub kappa: Option<Scalar>,
    pub q: Option<Mat2>,
    pub normal_form: Option<(VerticalModel, VectorField)>,
    pub conjugating_map: Option<BirationalMap>,
    /// The coefficient field after any square root adjoined for `kappa`.
    pub context: FieldContext,
}

impl IntegrabilityReport {
    pub fn is_integrable(&self) -> bool {
        self.verdict == Verdict::Integrable
    }

    fn rejected(why: Obstruction, quadratic: Option<VerticalQuadratic>, ctx: &FieldContext) -> Self {
        let delta = quadratic.as_ref().map(|q| q.delta());
        IntegrabilityReport {
            verdict: Verdict::NotIntegrable(why),
            quadratic,
            delta,
            kappa: None,
            q: None,
            normal_form: None,
            conjugating_map: None,
            context: ctx.clone(),
        }
    }
}

fn first_nonzero(cands: [[UniRat; 2]; 2]) -> [UniRat; 2] {
    let [p, q] = cands;
    if p[0].is_zero() && p[1].is_zero() {
        q
    } else {
        p
    }
}

/// Eigenvector matrix with `Q^{-1} M Q = diag(kappa, -kappa)` and `det Q = 1`.
fn diagonalizer(q: &VerticalQuadratic, kappa: &Scalar) -> Result<Mat2> {
    let k = UniRat::constant(kappa.clone());
    let (a, b, c) = (&q.a, &q.b, &q.c);
    let v1 = first_nonzero([[c.clone(), &k - b], [&k + b, -a]]);
    let v2 = first_nonzero([[c.clone(), &(-&k) - b], [b - &k, -a]]);
    let m = Mat2::from_columns(v1, v2);
    let d = m.det();
    if d.is_zero() {
        return Err(Error::InvariantViolation("eigenvectors are dependent".into()));
    }
    let dinv = d.inv();
    let [[p, r], [s, u]] = m.e;
    Ok(Mat2::new([[p, &r * &dinv], [s, &u * &dinv]]))
}

/// Chain matrix with `Q^{-1} M Q = [[0, 1], [0, 0]]` for nilpotent nonzero `M`.
fn jordanizer(q: &VerticalQuadratic) -> Mat2 {
    let m = q.matrix();
    let e1 = [UniRat::one(), UniRat::zero()];
    let e2 = [UniRat::zero(), UniRat::one()];
    let img = m.apply(&e1);
    let q2 = if img[0].is_zero() && img[1].is_zero() { e2 } else { e1 };
    let q1 = m.apply(&q2);
    Mat2::from_columns(q1, q2)
}

/// Decides whether a vertical field is birationally integrable and, if so,
/// produces the Moebius conjugation to `d/dy` or `2 kappa y d/dy`.
pub fn integrability_test(x: &VectorField, ctx: &FieldContext) -> Result<IntegrabilityReport> {
    let quad = match extract_quadratic(x)? {
        Ok(q) => q,
        Err(why) => return Ok(IntegrabilityReport::rejected(why, None, ctx)),
    };
    if quad.is_zero() {
        return Err(Error::ZeroField);
    }
    let delta = quad.delta();
    let d = match delta.as_constant() {
        Some(d) => d,
        None => return Ok(IntegrabilityReport::rejected(Obstruction::NonConstantDiscriminant, Some(quad), ctx)),
    };
    let (kappa, ctx) = if d.is_zero() { (Scalar::zero(), ctx.clone()) } else { ctx.sqrt(&d)? };
    let s = x.surface;
    let (q, model, nf) = if kappa.is_zero() {
        (jordanizer(&quad), VerticalModel::T, VectorField::d_y(s))
    } else {
        let nf = VectorField::vertical(s, BiRat::y().scale(&(&kappa * &Scalar::from_i64(2))));
        (diagonalizer(&quad, &kappa)?, VerticalModel::L, nf)
    };
    let map = q.mobius_map(s)?;
    if pullback(x, &map)? != nf {
        return Err(Error::InvariantViolation(format!("regularizer {} does not reach {}", map, nf)));
    }
    Ok(IntegrabilityReport {
        verdict: Verdict::Integrable,
        quadratic: Some(quad),
        delta: Some(delta),
        kappa: Some(kappa),
        q: Some(q),
        normal_form: Some((model, nf)),
        conjugating_map: Some(map),
        context: ctx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: SurfaceModel = SurfaceModel::F(0);

    fn vert(t: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(S, &[], t)
    }

    fn test(x: &VectorField) -> IntegrabilityReport {
        integrability_test(x, &FieldContext::gaussian()).unwrap()
    }

    #[test]
    fn extraction_examples() {
        let q = extract_quadratic(&vert(&[(1, 0, 2)])).unwrap().unwrap();
        assert_eq!((q.a, q.b, q.c), (UniRat::one(), UniRat::zero(), UniRat::zero()));
        let q = extract_quadratic(&vert(&[(1, 0, 2), (1, 1, 0)])).unwrap().unwrap();
        assert_eq!(q.c, UniRat::x());
        assert_eq!(extract_quadratic(&vert(&[(1, 0, 3)])).unwrap(), Err(Obstruction::DegreeInY(3)));
        assert!(matches!(extract_quadratic(&VectorField::d_x(S)), Err(Error::NotVertical)));
    }

    #[test]
    fn y_squared_is_integrable() {
        let r = test(&vert(&[(1, 0, 2)]));
        assert!(r.is_integrable());
        assert_eq!(r.kappa, Some(Scalar::zero()));
        assert_eq!(r.normal_form.unwrap().1, VectorField::d_y(S));
    }

    #[test]
    fn non_constant_discriminant() {
        let r = test(&vert(&[(1, 0, 2), (1, 1, 0)]));
        assert_eq!(r.verdict, Verdict::NotIntegrable(Obstruction::NonConstantDiscriminant));
        assert_eq!(r.delta, Some(-&UniRat::x()));
        let r = test(&vert(&[(1, 1, 1)]));
        assert_eq!(r.delta, Some(UniRat::from_poly(Poly::from_coeffs(vec![Scalar::zero(), Scalar::zero(), Scalar::from_ratio(1, 4)]))));
        assert!(!r.is_integrable());
    }

    #[test]
    fn x_dy_is_regularized_by_scaling_the_fiber() {
        let r = test(&vert(&[(1, 1, 0)]));
        let map = r.conjugating_map.unwrap();
        assert_eq!(map.f2, BiRat::from_poly(crate::exact_algebra::BiPoly::from_int_terms(&[(1, 1, 1)])));
    }

    #[test]
    fn irrational_kappa_extends_the_field() {
        // (y^2 - 2) d/dy: delta = 2
        let r = test(&vert(&[(1, 0, 2), (-2, 0, 0)]));
        assert!(r.is_integrable());
        assert!(r.context.radicand().is_some());
        let k = r.kappa.unwrap();
        assert_eq!(&k * &k, Scalar::from_i64(2));
        assert_eq!(r.q.unwrap().det(), UniRat::one());
    }

    #[test]
    fn moebius_pullback_is_matrix_conjugation() {
        let a = Mat2::new([[UniRat::x(), UniRat::one()], [UniRat::constant(Scalar::from_i64(2)), UniRat::one()]]);
        let q = VerticalQuadratic::new(UniRat::one(), UniRat::x(), UniRat::constant(Scalar::from_i64(3)));
        let lhs = pullback(&q.to_field(S), &a.mobius_map(S).unwrap()).unwrap();
        let rhs = VerticalQuadratic::from_matrix(&a.conjugate(&q.matrix()).unwrap()).to_field(S);
        assert_eq!(lhs, rhs);
    }
}
