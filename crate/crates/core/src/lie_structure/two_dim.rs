//! Normal forms of two-dimensional algebras of rational fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{BiPoly, BiRat, FieldContext, Scalar, UniRat, Var};
use crate::integrability::{integrability_test, VerticalModel};
use crate::normal_forms::{normalize_in_borel, reduce_to_tljh, NormalFormLabel};
use crate::vector_fields::{coordinates, lie_bracket, pullback, wedge_collinear, BirationalMap, SurfaceModel, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoDimLabel {
    /// `<d/dx, d/dy>`.
    A00,
    /// `<d/dx, y d/dy>`.
    A01,
    /// `<x d/dx, y d/dy>`.
    A11,
    /// `<x d/dx + gamma y d/dy, d/dy>`.
    Cgamma(Scalar),
    /// `<d/dx + y d/dy, d/dy>`.
    D,
    /// `<x d/dx + (n y + x^n) d/dy, d/dy>`.
    Fn(u32),
    /// `<d/dy, h(x) d/dy>`.
    CollinearAbelian(UniRat),
    /// `<d/dy, y d/dy>`.
    CollinearAffine,
}

impl TwoDimLabel {
    pub fn model_pair(&self, s: SurfaceModel) -> [VectorField; 2] {
        let f = |px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]| VectorField::from_terms(s, px, py);
        let dy = VectorField::d_y(s);
        match self {
            TwoDimLabel::A00 => [VectorField::d_x(s), dy],
            TwoDimLabel::A01 => [VectorField::d_x(s), f(&[], &[(1, 0, 1)])],
            TwoDimLabel::A11 => [f(&[(1, 1, 0)], &[]), f(&[], &[(1, 0, 1)])],
            TwoDimLabel::Cgamma(g) => [VectorField::new(s, BiRat::x(), BiRat::y().scale(g)), dy],
            TwoDimLabel::D => [f(&[(1, 0, 0)], &[(1, 0, 1)]), dy],
            TwoDimLabel::Fn(n) => [f(&[(1, 1, 0)], &[(*n as i64, 0, 1), (1, *n as usize, 0)]), dy],
            TwoDimLabel::CollinearAbelian(h) => [dy, VectorField::vertical(s, BiRat::from_unirat(h))],
            TwoDimLabel::CollinearAffine => [dy, f(&[], &[(1, 0, 1)])],
        }
    }

    /// The surface on which the model pair is holomorphic.
    pub fn model_surface(&self) -> SurfaceModel {
        match self {
            TwoDimLabel::Fn(n) => SurfaceModel::F(*n),
            TwoDimLabel::CollinearAbelian(h) => SurfaceModel::F(h.pole_degree() as u32),
            _ => SurfaceModel::F(0),
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, TwoDimLabel::A00 | TwoDimLabel::A01 | TwoDimLabel::A11 | TwoDimLabel::CollinearAbelian(_))
    }
}

impl fmt::Display for TwoDimLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoDimLabel::A00 => write!(f, "a00"),
            TwoDimLabel::A01 => write!(f, "a01"),
            TwoDimLabel::A11 => write!(f, "a11"),
            TwoDimLabel::Cgamma(g) => write!(f, "c_gamma({})", g),
            TwoDimLabel::D => write!(f, "d"),
            TwoDimLabel::Fn(n) => write!(f, "f_n({})", n),
            TwoDimLabel::CollinearAbelian(h) => write!(f, "CollinearAbelian({})", h),
            TwoDimLabel::CollinearAffine => write!(f, "CollinearAffine"),
        }
    }
}

/// `pair` is the input basis, reordered so that `[pair0, pair1] = pair0` in the affine
/// case; `pulled` is its pullback by `map` and spans the model pair.
#[derive(Clone, Debug)]
pub struct TwoDimClassification {
    pub label: TwoDimLabel,
    pub pair: [VectorField; 2],
    pub map: BirationalMap,
    pub pulled: [VectorField; 2],
}

impl TwoDimClassification {
    pub fn verify(&self) -> Result<bool> {
        let p = [pullback(&self.pair[0], &self.map)?, pullback(&self.pair[1], &self.map)?];
        Ok(p == self.pulled && spans_equal(&p, &self.label.model_pair(p[0].surface)))
    }
}

/// Equal spans of two independent families.
pub fn spans_equal(a: &[VectorField], b: &[VectorField]) -> bool {
    a.len() == b.len() && a.iter().all(|x| coordinates(x, b).is_some()) && b.iter().all(|x| coordinates(x, a).is_some())
}

pub(crate) fn shear_by(s: SurfaceModel, q: &BiRat) -> BirationalMap {
    let y = BiRat::y();
    BirationalMap::trusted(s, s, BiRat::x(), &y + q, BiRat::x(), &y - q)
}

/// `(1/x, y)`, an involution.
pub(crate) fn invert_x(s: SurfaceModel) -> BirationalMap {
    let inv = BiRat::new(BiPoly::one(), BiPoly::x());
    BirationalMap::trusted(s, s, inv.clone(), BiRat::y(), inv, BiRat::y())
}

/// `(x, y p(x))`.
fn multiply_fiber(s: SurfaceModel, p: &UniRat) -> Result<BirationalMap> {
    let pr = BiRat::from_unirat(p);
    let y = BiRat::y();
    Ok(BirationalMap::trusted(s, s, BiRat::x(), &y * &pr, BiRat::x(), &y / &pr))
}

/// Exponents and coefficients of `r` when its denominator is a monomial.
fn laurent(r: &UniRat) -> Option<Vec<(i64, Scalar)>> {
    let den = r.den();
    let v = den.x_valuation();
    if den.coeffs().iter().filter(|c| !c.is_zero()).count() != 1 {
        return None;
    }
    let c = den.coeff(v).inv();
    Some(
        r.num()
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (k as i64 - v as i64, a * &c))
            .collect(),
    )
}

fn laurent_to_birat(terms: &[(i64, Scalar)]) -> BiRat {
    terms.iter().fold(BiRat::zero(), |acc, (k, c)| &acc + &BiRat::x().pow(*k).scale(c))
}

/// Chains pullbacks, keeping the composite map.
struct Chain {
    input: [VectorField; 2],
    map: BirationalMap,
    pair: [VectorField; 2],
}

impl Chain {
    fn new(pair: [VectorField; 2]) -> Self {
        Chain { input: pair.clone(), map: BirationalMap::identity(pair[0].surface), pair }
    }

    fn swap_order(&mut self) {
        self.input.swap(0, 1);
        self.pair.swap(0, 1);
    }

    fn push(&mut self, m: &BirationalMap) -> Result<()> {
        self.pair = [pullback(&self.pair[0], m)?, pullback(&self.pair[1], m)?];
        self.map = self.map.compose(m)?;
        Ok(())
    }
}

fn unclassified(why: &str) -> Error {
    Error::Unclassified(why.to_string())
}

/// Birational normal form of the algebra spanned by `X` and `Y`.
pub fn classify_2dim(x: &VectorField, y: &VectorField) -> Result<TwoDimClassification> {
    if x.surface != y.surface {
        return Err(Error::SurfaceMismatch);
    }
    let basis = [x.clone(), y.clone()];
    super::algebra::structure_constants(&basis).map_err(|e| match e {
        Error::NotClosed(_) => Error::NotAnAlgebra,
        other => other,
    })?;
    let br = lie_bracket(x, y)?;
    let abelian = br.is_zero();
    let pair = if abelian {
        basis
    } else {
        let c = coordinates(&br, &basis).ok_or(Error::NotAnAlgebra)?;
        let b = if !c[0].is_zero() { y.scale(&c[0].inv()) } else { x.scale(&(-c[1].inv())) };
        [br, b]
    };
    let (label, chain) = if wedge_collinear(x, y) {
        collinear(pair, abelian)?
    } else if abelian {
        abelian_pair(pair)?
    } else {
        affine_pair(pair)?
    };
    let res = TwoDimClassification { label, pair: chain.input, map: chain.map, pulled: chain.pair };
    if !res.verify()? {
        return Err(Error::InvariantViolation(format!("two-dimensional witness fails for {}", res.label)));
    }
    Ok(res)
}

fn to_translation(x: &VectorField) -> Option<BirationalMap> {
    let r = integrability_test(x, &FieldContext::gaussian()).ok()?;
    match (&r.normal_form, r.conjugating_map) {
        (Some((VerticalModel::T, _)), Some(m)) => Some(m),
        _ => None,
    }
}

fn collinear(pair: [VectorField; 2], abelian: bool) -> Result<(TwoDimLabel, Chain)> {
    let s = pair[0].surface;
    let vertical = pair.iter().all(|v| v.is_vertical());
    let horizontal = pair.iter().all(|v| v.py.is_zero());
    if !vertical && !horizontal {
        return Err(unclassified("collinear pair is neither vertical nor horizontal"));
    }
    let mut ch = Chain::new(pair);
    if !vertical {
        ch.push(&BirationalMap::swap(s))?;
    }
    if abelian {
        let idx = (0..2).find(|&i| to_translation(&ch.pair[i]).is_some()).ok_or_else(|| {
            unclassified("no element of the collinear abelian pair is birationally a translation")
        })?;
        if idx == 1 {
            ch.swap_order();
        }
        let m = to_translation(&ch.pair[0]).expect("found above");
        ch.push(&m)?;
        let h = ch.pair[1].py.as_unirat_x().ok_or_else(|| Error::InvariantViolation("ratio depends on y".into()))?;
        return Ok((TwoDimLabel::CollinearAbelian(h), ch));
    }
    let m = to_translation(&ch.pair[0]).ok_or_else(|| unclassified("derived generator is not birationally a translation"))?;
    ch.push(&m)?;
    let h = &ch.pair[1].py - &BiRat::y();
    if h.depends_on(Var::Y) {
        return Err(Error::InvariantViolation("affine partner is not y + h(x)".into()));
    }
    ch.push(&shear_by(s, &-&h))?;
    Ok((TwoDimLabel::CollinearAffine, ch))
}

/// `(alpha, beta)` with `px = alpha x + beta`, for fields of a Borel algebra.
fn base_part(x: &VectorField) -> Option<(Scalar, Scalar)> {
    if !x.px.is_poly() {
        return None;
    }
    let p = x.px.num().as_x_poly()?;
    (p.deg() <= 1).then(|| (p.coeff(1), p.coeff(0)))
}

fn abelian_pair(pair: [VectorField; 2]) -> Result<(TwoDimLabel, Chain)> {
    let s = pair[0].surface;
    let not_borel = || unclassified("pair is not in a Borel subalgebra");
    let (a0, a1) = (base_part(&pair[0]).ok_or_else(not_borel)?, base_part(&pair[1]).ok_or_else(not_borel)?);
    // a vertical combination v and a partner w
    let (w, v) = if a0.0.is_zero() && a0.1.is_zero() {
        (pair[1].clone(), pair[0].clone())
    } else {
        let k = if !a0.0.is_zero() { &a1.0 * &a0.0.inv() } else { &a1.1 * &a0.1.inv() };
        let v = VectorField::combination(&[-&k, Scalar::one()], &pair);
        (pair[0].clone(), v)
    };
    if !v.is_vertical() {
        return Err(unclassified("base projection of the abelian pair is two-dimensional"));
    }
    let mut ch = Chain::new([w, v]);
    let vq = ch.pair[1].py.as_y_poly().filter(|c| c.len() <= 2).ok_or_else(not_borel)?;
    let (p, c) = (vq[0].clone(), vq.get(1).cloned().unwrap_or_else(UniRat::zero));
    let c = c.as_constant().ok_or_else(not_borel)?;
    let a = base_part(&ch.pair[0]).ok_or_else(not_borel)?;
    if !c.is_zero() {
        // v = (c y + p) d/dy becomes c y d/dy, and w then commutes with y d/dy
        ch.push(&shear_by(s, &BiRat::from_unirat(&p.scale(&-c.inv()))))?;
        if !a.0.is_zero() {
            ch.push(&crate::normal_forms::translate_x(s, &-&(&a.1 * &a.0.inv())))?;
        }
    } else {
        ch.push(&multiply_fiber(s, &p)?)?;
        // now v = d/dy and w = (alpha x + beta) d/dx + b(x) d/dy
        let b = ch.pair[0].py.as_unirat_x().ok_or_else(not_borel)?;
        let terms = laurent(&b).ok_or_else(not_borel)?;
        let q: Vec<(i64, Scalar)> = if a.0.is_zero() {
            if terms.iter().any(|(k, _)| *k == -1) {
                return Err(unclassified("partner needs a logarithm"));
            }
            terms.iter().map(|(k, t)| (k + 1, t * &(&a.1 * &Scalar::from_i64(k + 1)).inv())).collect()
        } else {
            ch.push(&crate::normal_forms::translate_x(s, &-&(&a.1 * &a.0.inv())))?;
            let b = ch.pair[0].py.as_unirat_x().ok_or_else(not_borel)?;
            laurent(&b)
                .ok_or_else(not_borel)?
                .into_iter()
                .filter(|(k, _)| *k != 0)
                .map(|(k, t)| (k, &t * &(&a.0 * &Scalar::from_i64(k)).inv()))
                .collect()
        };
        ch.push(&shear_by(s, &laurent_to_birat(&q)))?;
    }
    for label in [TwoDimLabel::A00, TwoDimLabel::A01, TwoDimLabel::A11] {
        if spans_equal(&ch.pair, &label.model_pair(s)) {
            return Ok((label, ch));
        }
    }
    let xdx_dy = [VectorField::from_terms(s, &[(1, 1, 0)], &[]), VectorField::d_y(s)];
    if spans_equal(&ch.pair, &xdx_dy) {
        ch.push(&BirationalMap::swap(s))?;
        return Ok((TwoDimLabel::A01, ch));
    }
    Err(unclassified("abelian pair did not reach a model"))
}

fn borel_degree(x: &VectorField) -> Option<u32> {
    let (_, _) = base_part(x)?;
    let c = x.py.as_y_poly()?;
    if c.len() > 2 || !c.iter().all(|u| u.is_poly()) || c.get(1).map_or(false, |u| !u.is_constant()) {
        return None;
    }
    Some(c.first().map_or(0, |u| u.num().deg() as u32))
}

fn affine_pair(pair: [VectorField; 2]) -> Result<(TwoDimLabel, Chain)> {
    let s = pair[0].surface;
    let not_borel = || unclassified("pair is not in a Borel subalgebra");
    let n = borel_degree(&pair[0]).ok_or_else(not_borel)?.max(borel_degree(&pair[1]).ok_or_else(not_borel)?);
    let mut ch = Chain::new(pair);
    // bring the derived generator to a multiple of d/dy
    let r = normalize_in_borel(&ch.pair[0], n)?;
    let conj = r.conjugator.clone();
    ch.push(&conj)?;
    match &r.label {
        NormalFormLabel::VerticalPoly(_) | NormalFormLabel::DxPlusEps { .. } => {
            let red = reduce_to_tljh(&r)?;
            ch.push(&red.residual.expect("reduction stores its map").1)?;
        }
        other => return Err(unclassified(&format!("derived generator has normal form {}", other))),
    }
    // the partner is now b(x) d/dx + (y + g(x)) d/dy
    let g = (&ch.pair[1].py - &BiRat::y()).as_unirat_x().ok_or_else(not_borel)?;
    let terms = laurent(&g).ok_or_else(not_borel)?;
    if terms.iter().any(|(k, _)| *k < 0) {
        if terms.iter().any(|(k, _)| *k > 0) {
            return Err(not_borel());
        }
        ch.push(&invert_x(s))?;
    }
    let m = borel_degree(&ch.pair[1]).ok_or_else(not_borel)?;
    let rb = normalize_in_borel(&ch.pair[1], m)?;
    ch.push(&rb.conjugator)?;
    let label = match rb.label {
        NormalFormLabel::J => TwoDimLabel::D,
        NormalFormLabel::Hgamma(g) => TwoDimLabel::Cgamma(g),
        NormalFormLabel::Rm(m) => TwoDimLabel::Fn(m),
        other => return Err(unclassified(&format!("affine partner has normal form {}", other))),
    };
    Ok((label, ch))
}
