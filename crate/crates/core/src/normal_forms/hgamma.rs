//! Monomial maps between the linear fields `H_gamma`.

use num::{BigInt, Integer, One, ToPrimitive};

use super::label::NormalFormLabel;
use crate::error::{Error, Result};
use crate::exact_algebra::{BiRat, Scalar};
use crate::vector_fields::{pullback, BirationalMap, SurfaceModel};

/// `pullback(H_gamma, map) = scale * H_gamma_prime`.
#[derive(Clone, Debug)]
pub struct HgammaRelation {
    pub gamma: Scalar,
    pub matrix: [[i64; 2]; 2],
    pub gamma_prime: Scalar,
    pub map: BirationalMap,
    pub scale: Scalar,
    pub verified: bool,
}

fn monomial(a: i64, b: i64) -> BiRat {
    &BiRat::x().pow(a) * &BiRat::y().pow(b)
}

/// Transports `H_gamma` along the unimodular matrix `[[a, b], [c, d]]` to
/// `H_gamma'` with `gamma' = (a gamma + b) / (c gamma + d)`, using the monomial map
/// `(x^a y^-c, x^-b y^d)`.
pub fn hgamma_relate(gamma: &Scalar, m: [[i64; 2]; 2]) -> Result<HgammaRelation> {
    let [[a, b], [c, d]] = m;
    let det = a * d - b * c;
    if det.abs() != 1 {
        return Err(Error::NotUnimodular);
    }
    let int = Scalar::from_i64;
    let den = &(&int(c) * gamma) + &int(d);
    if den.is_zero() {
        return Err(Error::Degenerate);
    }
    let gamma_prime = &(&(&int(a) * gamma) + &int(b)) * &den.inv();
    let scale = &den * &int(det);
    let s = SurfaceModel::F(0);
    let map = BirationalMap::trusted(
        s,
        s,
        monomial(a, -c),
        monomial(-b, d),
        monomial(d * det, c * det),
        monomial(b * det, a * det),
    );
    let pulled = pullback(&NormalFormLabel::Hgamma(gamma.clone()).field(s), &map)?;
    let verified = pulled == NormalFormLabel::Hgamma(gamma_prime.clone()).field(s).scale(&scale);
    Ok(HgammaRelation { gamma: gamma.clone(), matrix: m, gamma_prime, map, scale, verified })
}

/// A unimodular matrix sending a rational `gamma = p/q` to `0`.
pub fn rational_to_zero(gamma: &Scalar) -> Option<[[i64; 2]; 2]> {
    let r = gamma.as_rational()?;
    let (p, q) = (r.numer().clone(), r.denom().clone());
    // q d + p c = 1
    let e = q.extended_gcd(&p);
    debug_assert!(e.gcd.is_one());
    let small = |v: BigInt| v.to_i64();
    Some([[small(q)?, small(-p)?], [small(e.y)?, small(e.x)?]])
}

/// `rational_to_zero` followed by `hgamma_relate`.
pub fn relate_rational_to_zero(gamma: &Scalar) -> Result<HgammaRelation> {
    let m = rational_to_zero(gamma).ok_or(Error::Degenerate)?;
    hgamma_relate(gamma, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::BiPoly;

    #[test]
    fn shear_matrix_shifts_gamma() {
        let r = hgamma_relate(&Scalar::from_i64(2), [[1, 1], [0, 1]]).unwrap();
        assert_eq!(r.gamma_prime, Scalar::from_i64(3));
        assert!(r.verified);
        let y_over_x = BiRat::new(BiPoly::y(), BiPoly::x());
        assert_eq!((r.map.f1.clone(), r.map.f2.clone()), (BiRat::x(), y_over_x));
    }

    #[test]
    fn identity_and_errors() {
        let g = &Scalar::one() + &(&Scalar::i() * &Scalar::from_i64(2));
        let r = hgamma_relate(&g, [[1, 0], [0, 1]]).unwrap();
        assert_eq!(r.gamma_prime, g);
        assert!(r.verified);
        assert!(matches!(hgamma_relate(&g, [[2, 0], [0, 1]]), Err(Error::NotUnimodular)));
        assert!(matches!(hgamma_relate(&Scalar::from_i64(1), [[0, 1], [1, -1]]), Err(Error::Degenerate)));
    }

    #[test]
    fn rational_gamma_goes_to_zero() {
        let g = Scalar::from_ratio(5, 3);
        let r = relate_rational_to_zero(&g).unwrap();
        assert!(r.gamma_prime.is_zero());
        assert!(r.verified);
        let [[a, b], [c, d]] = r.matrix;
        assert_eq!(a * d - b * c, 1);
    }

    #[test]
    fn swap_inverts_gamma() {
        let r = hgamma_relate(&Scalar::from_i64(4), [[0, 1], [1, 0]]).unwrap();
        assert_eq!(r.gamma_prime, Scalar::from_ratio(1, 4));
        assert!(r.verified);
    }
}
