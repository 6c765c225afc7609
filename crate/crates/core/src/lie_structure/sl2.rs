//! Completing an affine pair to an `sl2` triple.

use std::fmt;

use super::catalog::{g0_basis, g2tilde_basis, g4tilde_basis, gn_basis};
use super::two_dim::{classify_2dim, invert_x, shear_by, spans_equal, TwoDimLabel};
use crate::error::{Error, Result};
use crate::exact_algebra::{coeff_match_solve, BiPoly, BiRat, FieldContext, Matrix, Relation, Scalar};
use crate::normal_forms::{projective_map, rescale};
use crate::vector_fields::{lie_bracket, pullback, pushforward, BirationalMap, VectorField};
use num::Signed;

/// `[X, Y] = X`, `[Z, Y] = -Z`, `[X, Z] = 2Y`.
pub fn verify_sl2_triple(x: &VectorField, y: &VectorField, z: &VectorField) -> Result<bool> {
    if x.surface != y.surface || y.surface != z.surface {
        return Err(Error::SurfaceMismatch);
    }
    Ok(lie_bracket(x, y)? == *x && lie_bracket(z, y)? == z.scale(&-Scalar::one()) && lie_bracket(x, z)? == y.scale(&Scalar::from_i64(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Model {
    G0,
    Gn(u32),
    G2Tilde,
    G4Tilde,
}

impl Sl2Model {
    pub fn basis(&self) -> Vec<VectorField> {
        match self {
            Sl2Model::G0 => g0_basis(),
            Sl2Model::Gn(n) => gn_basis(*n),
            Sl2Model::G2Tilde => g2tilde_basis(),
            Sl2Model::G4Tilde => g4tilde_basis(),
        }
    }
}

impl fmt::Display for Sl2Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Model::G0 => write!(f, "g0"),
            Sl2Model::Gn(n) => write!(f, "gn({})", n),
            Sl2Model::G2Tilde => write!(f, "g2tilde"),
            Sl2Model::G4Tilde => write!(f, "g4tilde"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Sl2Verdict {
    /// `witness` pulls the triple `(X, Y, z)` back onto the model basis; for `g4tilde`
    /// onto its span.
    Completed { z: VectorField, model: Sl2Model, witness: BirationalMap },
    Impossible(String),
}

impl Sl2Verdict {
    pub fn is_completed(&self) -> bool {
        matches!(self, Sl2Verdict::Completed { .. })
    }
}

fn same_fields(a: &[VectorField], b: &[VectorField]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(u, v)| u.px == v.px && u.py == v.py)
}

struct Triple {
    map: BirationalMap,
    fields: [VectorField; 3],
}

impl Triple {
    fn push(&mut self, m: &BirationalMap) -> Result<()> {
        let [a, b, c] = &self.fields;
        self.fields = [pullback(a, m)?, pullback(b, m)?, pullback(c, m)?];
        self.map = self.map.compose(m)?;
        Ok(())
    }
}

fn monomial(c: Scalar, i: usize, j: usize) -> BiRat {
    BiRat::from_poly(BiPoly::monomial(c, i, j))
}

/// Solves `[X, Z] = 2Y`, `[Z, Y] = -Z` for `Z` in the span of `ansatz` with the
/// coefficients listed in `fixed` pinned.
fn solve_ansatz(x: &VectorField, y: &VectorField, ansatz: &[VectorField], fixed: &[(usize, Scalar)]) -> Result<VectorField> {
    let n = ansatz.len();
    let comps = |f: &dyn Fn(&VectorField) -> Result<VectorField>| -> Result<(Vec<BiRat>, Vec<BiRat>)> {
        let v: Vec<VectorField> = ansatz.iter().map(f).collect::<Result<_>>()?;
        Ok((v.iter().map(|w| w.px.clone()).collect(), v.iter().map(|w| w.py.clone()).collect()))
    };
    let (e1x, e1y) = comps(&|z| lie_bracket(x, z))?;
    let (e2x, e2y) = comps(&|z| Ok(&lie_bracket(z, y)? + z))?;
    let two_y = y.scale(&Scalar::from_i64(2));
    let mut rels = vec![
        Relation::new(e1x, two_y.px.clone()),
        Relation::new(e1y, two_y.py.clone()),
        Relation::homogeneous(e2x),
        Relation::homogeneous(e2y),
    ];
    for (k, v) in fixed {
        let mut t = vec![BiRat::zero(); n];
        t[*k] = BiRat::one();
        rels.push(Relation::new(t, BiRat::constant(v.clone())));
    }
    let sol = coeff_match_solve(n, &rels)?;
    Ok(VectorField::combination(&sol.particular, ansatz))
}

/// Completes `(X, Y)` with `[X, Y] = X` to an `sl2` triple, taking the branch `c2 = 0`.
pub fn sl2_complete(x: &VectorField, y: &VectorField) -> Result<Sl2Verdict> {
    sl2_complete_with(x, y, &Scalar::zero())
}

/// As `sl2_complete`, with `c2` the coefficient of `x^(2 lambda) d/dy` in the chart where
/// `X = d/dy` and `Y = (x / lambda) d/dx + y d/dy`.
pub fn sl2_complete_with(x: &VectorField, y: &VectorField, c2: &Scalar) -> Result<Sl2Verdict> {
    if x.surface != y.surface {
        return Err(Error::SurfaceMismatch);
    }
    if lie_bracket(x, y)? != *x {
        return Err(Error::NotAffinePair);
    }
    let cls = classify_2dim(x, y).map_err(|e| match e {
        Error::NotIndependent | Error::NotAnAlgebra => Error::NotAffinePair,
        other => other,
    })?;
    match &cls.label {
        TwoDimLabel::D => return Ok(Sl2Verdict::Impossible("flow contains logarithm".into())),
        TwoDimLabel::Fn(_) => return Ok(Sl2Verdict::Impossible("no rational Z".into())),
        TwoDimLabel::Cgamma(_) | TwoDimLabel::CollinearAffine => {}
        _ => return Err(Error::NotAffinePair),
    }
    let s = x.surface;
    let bad = |what: &str| Error::InvariantViolation(format!("{} after classification", what));
    let mut t = Triple { map: cls.map.clone(), fields: [cls.pulled[0].clone(), cls.pulled[1].clone(), VectorField::zero(s)] };
    // X = d/dy, then Y = kappa x d/dx + y d/dy
    let sx = t.fields[0].py.as_constant().filter(|_| t.fields[0].px.is_zero()).ok_or_else(|| bad("derived generator is not c d/dy"))?;
    t.push(&rescale(s, &Scalar::one(), &sx))?;
    let b = (&t.fields[1].py - &BiRat::y()).as_constant().ok_or_else(|| bad("partner is not (y + b) d/dy"))?;
    t.push(&shear_by(s, &BiRat::constant(-b)))?;
    let kappa = (&t.fields[1].px / &BiRat::x()).as_constant().ok_or_else(|| bad("partner is not linear in x"))?;
    let [xn, yn, _] = t.fields.clone();
    let y2 = VectorField::from_terms(s, &[], &[(1, 0, 2)]);
    if kappa.is_zero() {
        t.fields[2] = solve_ansatz(&xn, &yn, &[y2], &[])?;
        return finish(x, y, t, Sl2Model::G0);
    }
    let two = Scalar::from_i64(2);
    let lambda = kappa.inv();
    let two_lambda = (&two * &lambda).as_i64();
    let mut ansatz = vec![&VectorField::new(s, monomial(&two * &kappa, 1, 1), BiRat::zero()) + &y2];
    let mut fixed = Vec::new();
    if let Some(l) = lambda.as_i64() {
        ansatz.push(VectorField::new(s, BiRat::x().pow(l + 1), BiRat::zero()));
        fixed.push((ansatz.len() - 1, Scalar::zero()));
    }
    match two_lambda {
        Some(m) => {
            ansatz.push(VectorField::vertical(s, BiRat::x().pow(m)));
            fixed.push((ansatz.len() - 1, c2.clone()));
        }
        None if !c2.is_zero() => return Ok(Sl2Verdict::Impossible("2/lambda is not an integer".into())),
        None => {}
    }
    t.fields[2] = solve_ansatz(&xn, &yn, &ansatz, &fixed)?;
    let Some(q) = lambda.as_rational() else {
        return Ok(Sl2Verdict::Impossible("2/lambda is not an integer".into()));
    };
    // (1/x, y) flips the sign of lambda and keeps c2
    let lambda = if q.is_negative() {
        t.push(&invert_x(s))?;
        -&lambda
    } else {
        lambda
    };
    if c2.is_zero() {
        return match (&two * &lambda.inv()).as_i64() {
            Some(n) if n >= 1 => {
                t.push(&BirationalMap::swap(s))?;
                finish(x, y, t, Sl2Model::Gn(n as u32))
            }
            _ => Ok(Sl2Verdict::Impossible("2/lambda is not an integer".into())),
        };
    }
    match (&two * &lambda).as_i64() {
        Some(4) => Ok(Sl2Verdict::Impossible("flow not birational".into())),
        Some(2) => {
            // (mu x, y) with mu^2 c2 = 1, the swap, then ((x + y)/2, (x - y)/2)
            let (root, _) = FieldContext::gaussian().sqrt(c2)?;
            t.push(&rescale(s, &root.inv(), &Scalar::one()))?;
            t.push(&BirationalMap::swap(s))?;
            let half = Scalar::from_ratio(1, 2);
            let lin = |a: i64, b: i64, c: &Scalar| BiRat::from_poly(BiPoly::from_terms(&[(c * &Scalar::from_i64(a), 1, 0), (c * &Scalar::from_i64(b), 0, 1)]));
            let one = Scalar::one();
            t.push(&BirationalMap::trusted(s, s, lin(1, 1, &half), lin(1, -1, &half), lin(1, 1, &one), lin(1, -1, &one)))?;
            finish(x, y, t, Sl2Model::G2Tilde)
        }
        Some(1) => {
            // (mu x, y) with mu c2 = 1, then (x^2 - 2y, x), then the conic to x^2 + y^2 + 1
            t.push(&rescale(s, &c2.inv(), &Scalar::one()))?;
            let g1 = BiRat::from_poly(BiPoly::from_int_terms(&[(1, 2, 0), (-2, 0, 1)]));
            let h2 = BiRat::from_poly(BiPoly::from_terms(&[(Scalar::from_ratio(1, 2), 0, 2), (Scalar::from_ratio(-1, 2), 1, 0)]));
            t.push(&BirationalMap::trusted(s, s, g1, BiRat::x(), BiRat::y(), h2))?;
            t.push(&projective_map(&conic_matrix(), s)?)?;
            finish(x, y, t, Sl2Model::G4Tilde)
        }
        _ => Ok(Sl2Verdict::Impossible("2/lambda is not an integer".into())),
    }
}

/// Projective change of coordinates taking the invariant conic of the `lambda = 1/2`
/// chart to `x^2 + y^2 + 1`.
fn conic_matrix() -> Matrix {
    let (i, half) = (Scalar::i(), Scalar::from_ratio(1, 2));
    let z = Scalar::zero;
    Matrix::from_rows(vec![
        vec![Scalar::one(), z(), z()],
        vec![z(), Scalar::one(), i.clone()],
        vec![z(), -&half, &half * &i],
    ])
}

fn finish(x: &VectorField, y: &VectorField, t: Triple, model: Sl2Model) -> Result<Sl2Verdict> {
    let basis = model.basis();
    let ok = match model {
        Sl2Model::G4Tilde => {
            let rel: Vec<VectorField> = basis.iter().map(|b| b.on(t.fields[0].surface)).collect();
            spans_equal(&t.fields, &rel)
        }
        _ => same_fields(&t.fields, &basis),
    };
    if !ok {
        return Err(Error::InvariantViolation(format!("triple does not land on {}", model)));
    }
    let z = pushforward(&t.fields[2], &t.map)?;
    if !verify_sl2_triple(x, y, &z)? {
        return Err(Error::InvariantViolation("completed triple fails the sl2 relations".into()));
    }
    Ok(Sl2Verdict::Completed { z, model, witness: t.map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_fields::SurfaceModel;

    const S: SurfaceModel = SurfaceModel::F(0);

    fn f(px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(S, px, py)
    }

    fn partner(lambda: &Scalar) -> VectorField {
        VectorField::new(S, BiRat::x().scale(&lambda.inv()), BiRat::y())
    }

    #[test]
    fn triple_checks() {
        let g = g0_basis();
        assert!(verify_sl2_triple(&g[0], &g[1], &g[2]).unwrap());
        for n in 1..5 {
            let g = gn_basis(n);
            assert!(verify_sl2_triple(&g[0], &g[1], &g[2]).unwrap());
        }
        assert!(!verify_sl2_triple(&g[0], &g[1], &VectorField::d_x(S)).unwrap());
    }

    #[test]
    fn collinear_gives_g0() {
        match sl2_complete(&VectorField::d_y(S), &f(&[], &[(1, 0, 1)])).unwrap() {
            Sl2Verdict::Completed { z, model, .. } => {
                assert_eq!(model, Sl2Model::G0);
                assert_eq!(z, f(&[], &[(1, 0, 2)]));
            }
            v => panic!("{:?}", v),
        }
    }

    #[test]
    fn lambda_one_with_c2_gives_g2tilde() {
        let (x, y) = (VectorField::d_y(S), partner(&Scalar::one()));
        match sl2_complete_with(&x, &y, &Scalar::one()).unwrap() {
            Sl2Verdict::Completed { z, model, witness } => {
                assert_eq!(model, Sl2Model::G2Tilde);
                let pulled: Vec<VectorField> = [x, y, z].iter().map(|v| pullback(v, &witness).unwrap()).collect();
                assert_eq!(pulled, g2tilde_basis());
            }
            v => panic!("{:?}", v),
        }
    }

    #[test]
    fn lambda_half_with_c2_gives_g4tilde() {
        let v = sl2_complete_with(&VectorField::d_y(S), &partner(&Scalar::from_ratio(1, 2)), &Scalar::from_i64(3)).unwrap();
        assert!(matches!(v, Sl2Verdict::Completed { model: Sl2Model::G4Tilde, .. }), "{:?}", v);
    }

    #[test]
    fn lambda_two_with_c2_is_impossible() {
        let v = sl2_complete_with(&VectorField::d_y(S), &partner(&Scalar::from_i64(2)), &Scalar::one()).unwrap();
        assert!(matches!(v, Sl2Verdict::Impossible(ref r) if r == "flow not birational"));
    }

    #[test]
    fn gn_for_small_n() {
        for n in 1..5u32 {
            let lambda = Scalar::from_ratio(2, n as i64);
            match sl2_complete(&VectorField::d_y(S), &partner(&lambda)).unwrap() {
                Sl2Verdict::Completed { model, .. } => assert_eq!(model, Sl2Model::Gn(n)),
                v => panic!("{}: {:?}", n, v),
            }
        }
    }

    #[test]
    fn rejected_rows() {
        let dy = VectorField::d_y(S);
        let d = sl2_complete(&dy, &f(&[(1, 0, 0)], &[(1, 0, 1)])).unwrap();
        assert!(matches!(d, Sl2Verdict::Impossible(ref r) if r == "flow contains logarithm"));
        let n = Scalar::from_i64(3);
        let fy = VectorField::new(S, BiRat::x().scale(&n.inv()), &BiRat::y() + &BiRat::x().pow(3).scale(&n.inv()));
        let v = sl2_complete(&dy, &fy).unwrap();
        assert!(matches!(v, Sl2Verdict::Impossible(ref r) if r == "no rational Z"));
        let r = sl2_complete(&VectorField::d_x(S), &dy);
        assert!(matches!(r, Err(Error::NotAffinePair)));
    }
}
