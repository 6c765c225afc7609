use std::fmt;

use super::field::{SurfaceModel, VectorField};
use crate::exact_algebra::{coeff_match_solve, BiPoly, BiRat, Relation, Scalar};

/// Finite-dimensional algebras of polynomial fields with a fixed basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraSpace {
    AutP2,
    AutFn(u32),
    BorelBn(u32),
}

impl fmt::Display for AlgebraSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpace::AutP2 => write!(f, "AutP2"),
            AlgebraSpace::AutFn(n) => write!(f, "AutF{}", n),
            AlgebraSpace::BorelBn(n) => write!(f, "B{}", n),
        }
    }
}

fn mono(s: Scalar, i: usize, j: usize) -> BiRat {
    BiRat::from_poly(BiPoly::monomial(s, i, j))
}

impl AlgebraSpace {
    pub fn surface(&self) -> SurfaceModel {
        match self {
            AlgebraSpace::AutP2 => SurfaceModel::P2,
            AlgebraSpace::AutFn(n) | AlgebraSpace::BorelBn(n) => SurfaceModel::F(*n),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AlgebraSpace::AutP2 => 8,
            AlgebraSpace::AutFn(0) => 6,
            AlgebraSpace::AutFn(n) => *n as usize + 5,
            AlgebraSpace::BorelBn(n) => *n as usize + 4,
        }
    }

    pub fn basis(&self) -> Vec<VectorField> {
        let s = self.surface();
        let f = |px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]| VectorField::from_terms(s, px, py);
        match *self {
            AlgebraSpace::AutP2 => vec![
                f(&[(1, 0, 0)], &[]),
                f(&[], &[(1, 0, 0)]),
                f(&[(1, 1, 0)], &[]),
                f(&[], &[(1, 0, 1)]),
                f(&[(1, 0, 1)], &[]),
                f(&[], &[(1, 1, 0)]),
                f(&[(1, 2, 0)], &[(1, 1, 1)]),
                f(&[(1, 1, 1)], &[(1, 0, 2)]),
            ],
            AlgebraSpace::AutFn(0) => vec![
                f(&[(1, 0, 0)], &[]),
                f(&[(1, 1, 0)], &[]),
                f(&[(1, 2, 0)], &[]),
                f(&[], &[(1, 0, 0)]),
                f(&[], &[(1, 0, 1)]),
                f(&[], &[(1, 0, 2)]),
            ],
            AlgebraSpace::AutFn(n) => {
                let k = n as usize;
                let mut b = vec![
                    f(&[(1, 0, 0)], &[]),
                    VectorField::new(s, BiRat::x(), mono(Scalar::from_ratio(n as i64, 2), 0, 1)),
                    VectorField::new(s, mono(Scalar::one(), 2, 0), mono(Scalar::from_i64(n as i64), 1, 1)),
                    f(&[], &[(1, 0, 1)]),
                ];
                for i in 0..=k {
                    b.push(f(&[], &[(1, i, 0)]));
                }
                b
            }
            AlgebraSpace::BorelBn(n) => {
                let mut b = vec![f(&[(1, 0, 0)], &[]), f(&[(1, 1, 0)], &[])];
                for i in 0..=n as usize {
                    b.push(f(&[], &[(1, i, 0)]));
                }
                b.push(f(&[], &[(1, 0, 1)]));
                b
            }
        }
    }
}

/// Coordinates of `X` in the basis of `space`, or `None` when `X` is not a member.
pub fn membership(x: &VectorField, space: AlgebraSpace) -> Option<Vec<Scalar>> {
    coordinates(x, &space.basis())
}

/// Coordinates of `X` in the span of `basis` (assumed independent).
pub fn coordinates(x: &VectorField, basis: &[VectorField]) -> Option<Vec<Scalar>> {
    let rels = [
        Relation::new(basis.iter().map(|b| b.px.clone()).collect(), x.px.clone()),
        Relation::new(basis.iter().map(|b| b.py.clone()).collect(), x.py.clone()),
    ];
    coeff_match_solve(basis.len(), &rels).ok().map(|s| s.particular)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_coordinates() {
        let s = SurfaceModel::F(2);
        let x = VectorField::from_terms(s, &[], &[(1, 1, 0)]);
        let c = membership(&x, AlgebraSpace::BorelBn(2)).unwrap();
        let expect: Vec<Scalar> = [0, 0, 0, 1, 0, 0].iter().map(|&v| Scalar::from_i64(v)).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn quadratic_vertical_membership() {
        let y2 = VectorField::from_terms(SurfaceModel::F(1), &[], &[(1, 0, 2)]);
        assert!(membership(&y2, AlgebraSpace::AutFn(1)).is_none());
        assert!(membership(&y2.on(SurfaceModel::F(0)), AlgebraSpace::AutFn(0)).is_some());
    }

    #[test]
    fn dimensions_match_bases() {
        for sp in [AlgebraSpace::AutP2, AlgebraSpace::AutFn(0), AlgebraSpace::AutFn(3), AlgebraSpace::BorelBn(2)] {
            assert_eq!(sp.basis().len(), sp.dim());
        }
    }

    #[test]
    fn coefficients_reconstruct() {
        let s = SurfaceModel::P2;
        let x = VectorField::from_terms(s, &[(3, 2, 0), (1, 0, 1)], &[(3, 1, 1), (-2, 0, 0)]);
        let c = membership(&x, AlgebraSpace::AutP2).unwrap();
        assert_eq!(VectorField::combination(&c, &AlgebraSpace::AutP2.basis()), x);
    }
}
