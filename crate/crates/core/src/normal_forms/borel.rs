//! Normal forms inside the Borel subalgebra `B_n` and the birational reductions to `T`, `J`.

use super::label::{ClassificationResult, NormalFormLabel};
use crate::error::{Error, Result};
use crate::exact_algebra::{coeff_match_solve, BiPoly, BiRat, Poly, Relation, Scalar};
use crate::vector_fields::{pullback, BirationalMap, SurfaceModel, VectorField};

fn xpoly(p: &Poly) -> BiRat {
    BiRat::from_poly(BiPoly::from_x_poly(p.clone()))
}

/// `(x + a, y)`.
pub fn translate_x(s: SurfaceModel, a: &Scalar) -> BirationalMap {
    let sh = |c: &Scalar| BiRat::from_poly(BiPoly::from_x_poly(Poly::from_coeffs(vec![c.clone(), Scalar::one()])));
    BirationalMap::trusted(s, s, sh(a), BiRat::y(), sh(&-a), BiRat::y())
}

/// `(x, y + q(x))`.
pub fn shear(s: SurfaceModel, q: &Poly) -> BirationalMap {
    let y = BiRat::y();
    BirationalMap::trusted(s, s, BiRat::x(), &y + &xpoly(q), BiRat::x(), &y - &xpoly(q))
}

/// `(c x, d y)`.
pub fn rescale(s: SurfaceModel, c: &Scalar, d: &Scalar) -> BirationalMap {
    BirationalMap::trusted(
        s,
        s,
        BiRat::x().scale(c),
        BiRat::y().scale(d),
        BiRat::x().scale(&c.inv()),
        BiRat::y().scale(&d.inv()),
    )
}

/// `X = (alpha x + beta) d/dx + (gamma y + p(x)) d/dy`.
struct BorelParts {
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    p: Poly,
}

fn borel_parts(x: &VectorField, n: u32) -> Result<BorelParts> {
    let bad = || Error::NotInBorel(n);
    if !x.is_polynomial() {
        return Err(bad());
    }
    let px = x.px.num().as_x_poly().ok_or_else(bad)?;
    let py = x.py.num();
    if px.deg() > 1 || py.deg_y() > 1 || !py.y_coeff(1).is_constant() || py.y_coeff(0).deg() > n as usize {
        return Err(bad());
    }
    Ok(BorelParts { alpha: px.coeff(1), beta: px.coeff(0), gamma: py.coeff(0, 1), p: py.y_coeff(0) })
}

/// Solves `gamma q - x^mu q' = target` for `q` of degree at most `n`.
fn solve_phi(mu: usize, gamma: &Scalar, n: u32, target: &Poly) -> Result<Poly> {
    let terms: Vec<BiRat> = (0..=n as usize)
        .map(|k| {
            let xk = Poly::monomial(Scalar::one(), k);
            xpoly(&(&xk.scale(gamma) - &xk.derivative().shift(mu)))
        })
        .collect();
    let sol = coeff_match_solve(terms.len(), &[Relation::new(terms, xpoly(target))])?;
    Ok(Poly::from_coeffs(sol.particular))
}

fn chain(maps: &[BirationalMap]) -> Result<BirationalMap> {
    let mut acc = maps[0].clone();
    for m in &maps[1..] {
        acc = acc.compose(m)?;
    }
    Ok(acc)
}

/// Pulls `X in B_n` back by automorphisms preserving `B_n` to a scalar multiple of a
/// catalog field.
pub fn normalize_in_borel(x: &VectorField, n: u32) -> Result<ClassificationResult> {
    normalize_with_shear(x, n).map(|(r, _)| r)
}

/// The shear `q` with `(x, y + q(x))` used by `normalize_in_borel`.
pub fn borel_shear(x: &VectorField, n: u32) -> Result<Poly> {
    normalize_with_shear(x, n).map(|(_, q)| q)
}

fn normalize_with_shear(x: &VectorField, n: u32) -> Result<(ClassificationResult, Poly)> {
    let s = x.surface;
    let mut q_used = Poly::zero();
    let parts = borel_parts(x, n)?;
    let mut maps = vec![BirationalMap::identity(s)];
    let (label, scale) = if parts.alpha.is_zero() && parts.beta.is_zero() {
        if !parts.gamma.is_zero() {
            q_used = parts.p.scale(&(-parts.gamma.inv()));
            maps.push(shear(s, &q_used));
            (NormalFormLabel::L, parts.gamma.clone())
        } else if parts.p.is_zero() {
            return Err(Error::ZeroField);
        } else {
            let lc = parts.p.leading();
            (NormalFormLabel::VerticalPoly(parts.p.monic()), lc)
        }
    } else {
        let (mu, scale0) = if parts.alpha.is_zero() {
            (0, parts.beta.clone())
        } else {
            maps.push(translate_x(s, &-(&parts.beta * &parts.alpha.inv())));
            (1, parts.alpha.clone())
        };
        // now scale0 * (x^mu d/dx + (gamma y + p) d/dy)
        let y1 = pullback(x, &chain(&maps)?)?.scale(&scale0.inv());
        let BorelParts { gamma, p, .. } = borel_parts(&y1, n)?;
        let integer_gamma = gamma.as_i64().filter(|&m| (0..=n as i64).contains(&m));
        // the part of p outside the image of Phi_{mu, gamma}
        let keep = match (mu, integer_gamma) {
            (0, _) if gamma.is_zero() => n as usize,
            (1, Some(m)) => m as usize,
            _ => usize::MAX,
        };
        let c = if keep == usize::MAX { Scalar::zero() } else { p.coeff(keep) };
        let target = -&(&p - &Poly::monomial(c.clone(), keep.min(n as usize)));
        let q = solve_phi(mu, &gamma, n, &target)?;
        maps.push(shear(s, &q));
        q_used = q;
        match (mu, keep) {
            (0, usize::MAX) => {
                maps.push(rescale(s, &gamma.inv(), &Scalar::one()));
                (NormalFormLabel::J, &scale0 * &gamma)
            }
            (0, _) => {
                if !c.is_zero() {
                    maps.push(rescale(s, &Scalar::one(), &c));
                }
                (NormalFormLabel::DxPlusEps { n, eps: !c.is_zero() }, scale0)
            }
            (_, usize::MAX) => (NormalFormLabel::Hgamma(gamma), scale0),
            (_, m) => {
                if c.is_zero() {
                    (NormalFormLabel::Hgamma(gamma), scale0)
                } else {
                    maps.push(rescale(s, &Scalar::one(), &c));
                    (NormalFormLabel::Rm(m as u32), scale0)
                }
            }
        }
    };
    let conj = chain(&maps)?;
    let res = ClassificationResult { input: x.clone(), label, scale, conjugator: conj, matrix: None, residual: None };
    if !res.verify()? {
        return Err(Error::InvariantViolation(format!("Borel witness fails for {}", x)));
    }
    Ok((res, q_used))
}

/// Birational reduction of `DxPlusEps`, `VerticalPoly`, `R_m` and `N` to `T` or `J`.
pub fn reduce_to_tljh(r: &ClassificationResult) -> Result<ClassificationResult> {
    let s = r.input.surface;
    if r.residual.is_some() || r.label.is_terminal() {
        return Err(Error::NothingToReduce(r.label.to_string()));
    }
    let (label, map) = match &r.label {
        NormalFormLabel::DxPlusEps { n, eps } => {
            // (x, y + eps x^{n+1}/(n+1)) then the swap, composed as one map
            let k = *n as usize + 1;
            let lift = if *eps { Poly::monomial(Scalar::from_ratio(1, k as i64), k) } else { Poly::zero() };
            (NormalFormLabel::T, shear(s, &lift).compose(&BirationalMap::swap(s))?)
        }
        NormalFormLabel::VerticalPoly(p) => {
            let f2 = &BiRat::y() * &xpoly(p);
            (NormalFormLabel::T, BirationalMap::new(s, s, BiRat::x(), f2)?)
        }
        NormalFormLabel::Rm(m) => {
            let f2 = &BiRat::y().pow(*m as i64) * &BiRat::x();
            (NormalFormLabel::J, BirationalMap::new(s, s, BiRat::y(), f2)?)
        }
        NormalFormLabel::N => {
            let half = Scalar::from_ratio(1, 2);
            let f2 = BiRat::from_poly(BiPoly::from_terms(&[(Scalar::one(), 1, 0), (half, 0, 2)]));
            (NormalFormLabel::T, BirationalMap::new(s, s, BiRat::y(), f2)?)
        }
        _ => unreachable!("terminal labels handled above"),
    };
    let out = ClassificationResult { label, residual: Some((r.label.clone(), map)), ..r.clone() };
    if !out.verify()? {
        return Err(Error::InvariantViolation(format!("reduction of {} fails", r.label)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: SurfaceModel, px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(s, px, py)
    }

    #[test]
    fn jordan_case_uses_the_expected_shear() {
        let s = SurfaceModel::F(2);
        let x = f(s, &[(1, 0, 0)], &[(1, 0, 1), (1, 2, 0)]);
        let r = normalize_in_borel(&x, 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::J);
        assert_eq!(r.scale, Scalar::one());
        assert_eq!(borel_shear(&x, 2).unwrap(), Poly::from_i64s(&[-2, -2, -1]));
    }

    #[test]
    fn hgamma_case_kills_the_linear_term() {
        let s = SurfaceModel::F(2);
        let x = f(s, &[(1, 1, 0)], &[(2, 0, 1), (1, 1, 0)]);
        let r = normalize_in_borel(&x, 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::Hgamma(Scalar::from_i64(2)));
        assert_eq!(borel_shear(&x, 2).unwrap(), Poly::from_i64s(&[0, -1]));
    }

    #[test]
    fn resonant_term_survives() {
        let s = SurfaceModel::F(1);
        let x = f(s, &[(1, 1, 0)], &[(1, 0, 1), (1, 1, 0)]);
        let r = normalize_in_borel(&x, 1).unwrap();
        assert_eq!(r.label, NormalFormLabel::Rm(1));
        let red = reduce_to_tljh(&r).unwrap();
        assert_eq!(red.label, NormalFormLabel::J);
        assert_eq!(red.residual.as_ref().unwrap().1.f1, BiRat::y());
    }

    #[test]
    fn other_borel_cases() {
        let s = SurfaceModel::F(2);
        // 3 d/dx + (x^2 + 1) d/dy -> 3 (d/dx + x^2 d/dy) after a shear and y-rescale
        let r = normalize_in_borel(&f(s, &[(3, 0, 0)], &[(1, 2, 0), (1, 0, 0)]), 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::DxPlusEps { n: 2, eps: true });
        assert_eq!(r.scale, Scalar::from_i64(3));
        let t = reduce_to_tljh(&r).unwrap();
        assert_eq!(t.label, NormalFormLabel::T);
        // (2y + x) d/dy -> 2 L
        let r = normalize_in_borel(&f(s, &[], &[(2, 0, 1), (1, 1, 0)]), 2).unwrap();
        assert_eq!((r.label.clone(), r.scale.clone()), (NormalFormLabel::L, Scalar::from_i64(2)));
        assert!(matches!(reduce_to_tljh(&r), Err(Error::NothingToReduce(_))));
        // 2x d/dy -> 2 VerticalPoly(x) -> T
        let r = normalize_in_borel(&f(s, &[], &[(2, 1, 0)]), 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::VerticalPoly(Poly::x()));
        assert_eq!(reduce_to_tljh(&r).unwrap().label, NormalFormLabel::T);
        // (2x + 2) d/dx + 3y d/dy: translate then H_{3/2}
        let r = normalize_in_borel(&f(s, &[(2, 1, 0), (2, 0, 0)], &[(3, 0, 1)]), 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::Hgamma(Scalar::from_ratio(3, 2)));
        assert!(matches!(normalize_in_borel(&f(s, &[(1, 2, 0)], &[]), 2), Err(Error::NotInBorel(2))));
    }

    #[test]
    fn dx_alone_reduces_by_swap() {
        let s = SurfaceModel::F(2);
        let r = normalize_in_borel(&VectorField::d_x(s), 2).unwrap();
        assert_eq!(r.label, NormalFormLabel::DxPlusEps { n: 2, eps: false });
        assert_eq!(reduce_to_tljh(&r).unwrap().label, NormalFormLabel::T);
    }
}
