//! `sl3 -> aut(P2)` and the Jordan classification of plane fields.

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, ToPrimitive};

use super::label::{ClassificationResult, NormalFormLabel};
use crate::error::{Error, Result};
use crate::exact_algebra::{BiPoly, BiRat, FieldContext, Gaussian, Matrix, Scalar};
use crate::vector_fields::{BirationalMap, SurfaceModel, VectorField};

/// A 3x3 matrix with zero trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracelessMatrix3(Matrix);

impl TracelessMatrix3 {
    pub fn new(m: Matrix) -> Option<Self> {
        if m.rows() == 3 && m.cols() == 3 && m.trace().is_zero() {
            Some(TracelessMatrix3(m))
        } else {
            None
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// `Phi(A) = (d/dx, d/dy, -x d/dx - y d/dy) A (x, y, 1)^t`.
pub fn phi_iso(a: &TracelessMatrix3, s: SurfaceModel) -> VectorField {
    let m = &a.0;
    let lin = |i: usize| {
        BiPoly::from_terms(&[(m.get(i, 0).clone(), 1, 0), (m.get(i, 1).clone(), 0, 1), (m.get(i, 2).clone(), 0, 0)])
    };
    let (v1, v2, v3) = (lin(0), lin(1), lin(2));
    let px = &v1 - &(&BiPoly::x() * &v3);
    let py = &v2 - &(&BiPoly::y() * &v3);
    VectorField::new(s, BiRat::from_poly(px), BiRat::from_poly(py))
}

/// The traceless matrix with `phi_iso(A) = X`.
pub fn phi_inv(x: &VectorField) -> Result<TracelessMatrix3> {
    if !x.is_polynomial() {
        return Err(Error::NotInAutP2);
    }
    let (p, q) = (x.px.num(), x.py.num());
    let g = |b: &BiPoly, i: usize, j: usize| b.coeff(i, j);
    let u = g(p, 1, 0);
    let w = g(q, 0, 1);
    let a33 = -(&(&u + &w) / &Scalar::from_i64(3));
    let a = [
        [&u + &a33, g(p, 0, 1), g(p, 0, 0)],
        [g(q, 1, 0), &w + &a33, g(q, 0, 0)],
        [-g(p, 2, 0), -g(p, 1, 1), a33],
    ];
    let m = Matrix::from_rows(a.into_iter().map(|r| r.to_vec()).collect());
    let t = TracelessMatrix3(m);
    if &phi_iso(&t, x.surface) != x {
        return Err(Error::NotInAutP2);
    }
    Ok(t)
}

fn lin_frac(c: &Matrix, i: usize) -> BiRat {
    let row = |r: usize| {
        BiPoly::from_terms(&[(c.get(r, 0).clone(), 1, 0), (c.get(r, 1).clone(), 0, 1), (c.get(r, 2).clone(), 0, 0)])
    };
    BiRat::new(row(i), row(2))
}

/// The automorphism `[x : y : 1] -> C (x, y, 1)^t` of the plane.
pub fn projective_map(c: &Matrix, s: SurfaceModel) -> Result<BirationalMap> {
    let ci = c.inverse().ok_or_else(|| Error::NotBirational("singular matrix".into()))?;
    Ok(BirationalMap::trusted(s, s, lin_frac(c, 0), lin_frac(c, 1), lin_frac(&ci, 0), lin_frac(&ci, 1)))
}

fn to_complex(g: &Gaussian) -> Complex64 {
    Complex64::new(g.re.to_f64().unwrap_or(f64::NAN), g.im.to_f64().unwrap_or(f64::NAN))
}

fn denominator_lcm(gs: &[&Gaussian]) -> BigInt {
    gs.iter().flat_map(|g| [g.re.denom(), g.im.denom()]).fold(BigInt::one(), |acc, d| acc.lcm(d))
}

fn round(v: f64) -> Option<BigInt> {
    if v.is_finite() && v.abs() < 1e15 {
        Some(BigInt::from(v.round() as i64))
    } else {
        None
    }
}

/// A root in `Q(i)` of `t^3 + p t + q`, found by locating roots numerically and
/// confirming a Gaussian-integer candidate exactly.
fn gaussian_cubic_root(p: &Scalar, q: &Scalar) -> Option<Scalar> {
    if q.is_zero() {
        return Some(Scalar::zero());
    }
    let (pg, qg) = (p.as_gaussian()?, q.as_gaussian()?);
    // t = s/D turns the cubic monic with Gaussian-integer coefficients
    let d = denominator_lcm(&[pg, qg]);
    let dq = Scalar::from_rational(BigRational::from_integer(d.clone()));
    let p2 = p * &(&dq * &dq);
    let q2 = q * &(&dq * &(&dq * &dq));
    let (pc, qc) = (to_complex(p2.as_gaussian()?), to_complex(q2.as_gaussian()?));
    let f = |z: Complex64| z * z * z + pc * z + qc;
    // Durand-Kerner iteration
    let mut r = [Complex64::new(0.4, 0.9), Complex64::new(0.4, 0.9).powu(2), Complex64::new(0.4, 0.9).powu(3)];
    let scale = 1.0 + pc.norm().max(qc.norm());
    for z in r.iter_mut() {
        *z *= scale;
    }
    for _ in 0..500 {
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            if den.norm() > 0.0 {
                r[i] -= f(r[i]) / den;
            }
        }
    }
    for z in r {
        let (Some(re), Some(im)) = (round(z.re), round(z.im)) else { continue };
        let cand = Scalar::from_gaussian(Gaussian::new(BigRational::from_integer(re), BigRational::from_integer(im)));
        if (&(&(&cand * &cand) * &cand) + &(&(&p2 * &cand) + &q2)).is_zero() {
            return Some(&cand / &dq);
        }
    }
    None
}

/// Eigenvalues of a traceless 3x3 matrix with multiplicity, extending the field if needed.
fn eigenvalues(a: &Matrix, ctx: &FieldContext) -> Result<(Vec<Scalar>, FieldContext)> {
    let cp = a.char_poly();
    let (p, q) = (cp.coeff(1), cp.coeff(0));
    let r = gaussian_cubic_root(&p, &q).ok_or(Error::CharPolyDoesNotSplit)?;
    // t^3 + p t + q = (t - r)(t^2 + r t + p + r^2)
    let disc = &(&(&r * &r) * &Scalar::from_i64(-3)) - &(&p * &Scalar::from_i64(4));
    let (root, ctx) = if disc.is_zero() {
        (Scalar::zero(), ctx.clone())
    } else {
        ctx.sqrt(&disc).map_err(|_| Error::CharPolyDoesNotSplit)?
    };
    let half = Scalar::from_ratio(1, 2);
    let l2 = &(&root - &r) * &half;
    let l3 = &(&(-&root) - &r) * &half;
    let mut ev = vec![r, l2, l3];
    ev.sort();
    Ok((ev, ctx))
}

fn shifted(a: &Matrix, l: &Scalar) -> Matrix {
    a - &Matrix::identity(3).scale(l)
}

fn independent(vs: &[Vec<Scalar>]) -> bool {
    Matrix::from_columns(vs).rank() == vs.len()
}

fn units() -> Vec<Vec<Scalar>> {
    (0..3).map(|i| (0..3).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

fn scaled(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    v.iter().map(|c| c * s).collect()
}

/// Columns `C` with `C^{-1} A C = scale * A_label`, for the label's representative matrix.
fn jordan_witness(a: &Matrix, ev: &[Scalar]) -> Result<(NormalFormLabel, Scalar, Vec<Vec<Scalar>>)> {
    let inv = || Error::InvariantViolation("Jordan structure inconsistent with eigenvalues".into());
    if ev.iter().all(|l| l.is_zero()) {
        return match a.rank() {
            0 => Err(Error::ZeroField),
            1 => {
                // T: c3 -> c2 -> 0, c1 in the kernel
                let c3 = units().into_iter().find(|e| !a.apply(e).iter().all(|s| s.is_zero())).ok_or_else(inv)?;
                let c2 = a.apply(&c3);
                let c1 = a.nullspace().into_iter().find(|v| independent(&[v.clone(), c2.clone()])).ok_or_else(inv)?;
                Ok((NormalFormLabel::T, Scalar::one(), vec![c1, c2, c3]))
            }
            _ => {
                // N: c3 -> c1 -> c2 -> 0
                let a2 = a * a;
                let c3 = units().into_iter().find(|e| !a2.apply(e).iter().all(|s| s.is_zero())).ok_or_else(inv)?;
                let c1 = a.apply(&c3);
                let c2 = a.apply(&c1);
                Ok((NormalFormLabel::N, Scalar::one(), vec![c1, c2, c3]))
            }
        };
    }
    let (d1, d2, d3) = (&ev[0], &ev[1], &ev[2]);
    let repeated = if d1 == d2 { Some((d1, d3)) } else if d2 == d3 { Some((d2, d1)) } else { None };
    if let Some((l, mu)) = repeated {
        let al = shifted(a, l);
        if al.rank() == 2 {
            // J: c3 -> s c1 + l c3 with s = -3 l, c2 eigenvector for mu
            let s = l * &Scalar::from_i64(-3);
            let c3 = (&al * &al).nullspace().into_iter().find(|v| !al.apply(v).iter().all(|c| c.is_zero())).ok_or_else(inv)?;
            let c1 = scaled(&al.apply(&c3), &s.inv());
            let c2 = shifted(a, mu).nullspace().into_iter().next().ok_or_else(inv)?;
            return Ok((NormalFormLabel::J, s, vec![c1, c2, c3]));
        }
    }
    // diagonalizable: d3 is the least eigenvalue and d1 the next one different from it
    let d3 = &ev[0];
    let (d1, d2) = if ev[1] != ev[0] { (&ev[1], &ev[2]) } else { (&ev[2], &ev[1]) };
    let mut spaces: Vec<(&Scalar, Vec<Vec<Scalar>>)> = Vec::new();
    for l in ev {
        if !spaces.iter().any(|(m, _)| *m == l) {
            spaces.push((l, shifted(a, l).nullspace()));
        }
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for d in [d1, d2, d3] {
        let (_, vs) = spaces.iter_mut().find(|(m, _)| *m == d).ok_or_else(inv)?;
        cols.push(vs.pop().ok_or_else(inv)?);
    }
    let scale = d1 - d3;
    let gamma = &(d2 - d3) * &scale.inv();
    Ok((NormalFormLabel::Hgamma(gamma), scale, cols))
}

/// Jordan classification of a field in `aut(P2)` into `T`, `N`, `J` or `H_gamma`.
pub fn classify_p2(x: &VectorField, ctx: &FieldContext) -> Result<(ClassificationResult, FieldContext)> {
    let a = phi_inv(x)?;
    let (ev, ctx) = eigenvalues(&a.0, ctx)?;
    let (label, scale, cols) = jordan_witness(&a.0, &ev)?;
    let c = Matrix::from_columns(&cols);
    let conj = projective_map(&c, x.surface)?;
    let res = ClassificationResult { input: x.clone(), label, scale, conjugator: conj, matrix: Some(c), residual: None };
    if !res.verify()? {
        return Err(Error::InvariantViolation(format!("plane witness fails for {}", x)));
    }
    Ok((res, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: SurfaceModel = SurfaceModel::P2;

    fn m(rows: &[&[i64]]) -> TracelessMatrix3 {
        TracelessMatrix3::new(Matrix::from_i64(rows)).unwrap()
    }

    fn classify(x: &VectorField) -> ClassificationResult {
        classify_p2(x, &FieldContext::gaussian()).unwrap().0
    }

    #[test]
    fn phi_of_catalog_matrices() {
        let t = phi_iso(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]), P2);
        assert_eq!(t, VectorField::d_y(P2));
        let g = Scalar::from_i64(5);
        let third = Scalar::from_ratio(1, 3);
        let d = |v: Scalar| &v * &third;
        let h = Matrix::from_rows(vec![
            vec![d(&Scalar::from_i64(2) - &g), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), d(&(&g * &Scalar::from_i64(2)) - &Scalar::one()), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), -d(&g + &Scalar::one())],
        ]);
        let hx = phi_iso(&TracelessMatrix3::new(h).unwrap(), P2);
        assert_eq!(hx, NormalFormLabel::Hgamma(g).field(P2));
        assert!(phi_iso(&m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]), P2).is_zero());
    }

    #[test]
    fn phi_inverse() {
        let x = VectorField::from_terms(P2, &[(1, 0, 1)], &[(1, 0, 0)]);
        assert_eq!(phi_inv(&x).unwrap(), m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
        let x = VectorField::from_terms(P2, &[(1, 1, 1)], &[(1, 0, 2)]);
        assert_eq!(phi_inv(&x).unwrap(), m(&[&[0, 0, 0], &[0, 0, 0], &[0, -1, 0]]));
        let x = VectorField::from_terms(P2, &[(1, 0, 3)], &[]);
        assert!(matches!(phi_inv(&x), Err(Error::NotInAutP2)));
    }

    #[test]
    fn classification_examples() {
        let r = classify(&VectorField::d_y(P2));
        assert_eq!((r.label.clone(), r.scale.clone()), (NormalFormLabel::T, Scalar::one()));
        assert!(r.conjugator.is_identity());
        let r = classify(&VectorField::from_terms(P2, &[(1, 0, 1)], &[(1, 0, 0)]));
        assert_eq!(r.label, NormalFormLabel::N);
        let r = classify(&VectorField::from_terms(P2, &[(1, 1, 0)], &[(2, 0, 1)]));
        assert!(matches!(r.label, NormalFormLabel::Hgamma(_)));
        let r = classify(&NormalFormLabel::J.field(P2));
        assert_eq!(r.label, NormalFormLabel::J);
        assert!(r.verify().unwrap());
    }

    #[test]
    fn diagonal_input_reports_its_ratio() {
        // x d/dx + 2y d/dy has eigenvalues (-1, 0, 1)
        let r = classify(&VectorField::from_terms(P2, &[(1, 1, 0)], &[(2, 0, 1)]));
        assert_eq!(r.label, NormalFormLabel::Hgamma(Scalar::from_i64(2)));
        assert_eq!(r.scale, Scalar::one());
        // x d/dx + y d/dy and x d/dx repeat an eigenvalue
        let r = classify(&VectorField::from_terms(P2, &[(1, 1, 0)], &[(1, 0, 1)]));
        assert_eq!(r.label, NormalFormLabel::Hgamma(Scalar::one()));
        let r = classify(&VectorField::from_terms(P2, &[(3, 1, 0)], &[]));
        assert_eq!((r.label, r.scale), (NormalFormLabel::Hgamma(Scalar::zero()), Scalar::from_i64(3)));
    }

    #[test]
    fn irreducible_cubic_is_reported() {
        // companion-like matrix with char poly t^3 - t - 1
        let a = m(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]);
        let x = phi_iso(&a, P2);
        assert!(matches!(classify_p2(&x, &FieldContext::gaussian()), Err(Error::CharPolyDoesNotSplit)));
    }

    #[test]
    fn quadratic_eigenvalues_extend_the_field() {
        // eigenvalues 0, sqrt(2), -sqrt(2)
        let a = m(&[&[0, 2, 0], &[1, 0, 0], &[0, 0, 0]]);
        let (r, ctx) = classify_p2(&phi_iso(&a, P2), &FieldContext::gaussian()).unwrap();
        assert!(ctx.radicand().is_some());
        assert!(r.verify().unwrap());
    }
}
