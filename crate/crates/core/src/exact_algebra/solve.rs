//! Undetermined-coefficient solving for linear identities between rational functions.

use std::collections::BTreeMap;

use super::bipoly::BiPoly;
use super::birat::BiRat;
use super::linalg::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The identity `sum_j u_j * terms[j] = target` in `k(x, y)`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<BiRat>,
    pub target: BiRat,
}

impl Relation {
    pub fn new(terms: Vec<BiRat>, target: BiRat) -> Self {
        Relation { terms, target }
    }

    pub fn homogeneous(terms: Vec<BiRat>) -> Self {
        Relation { terms, target: BiRat::zero() }
    }
}

/// A particular solution together with a basis of the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub homogeneous: Vec<Vec<Scalar>>,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.homogeneous.is_empty()
    }
}

fn lcm(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = a.gcd(b);
    &a.div_exact(&g).expect("gcd divides") * b
}

/// Clears denominators, matches monomial coefficients and solves the resulting
/// linear system over the scalars. All relations share the `n` unknowns.
pub fn coeff_match_solve(n: usize, relations: &[Relation]) -> Result<Solution> {
    let mut rows: BTreeMap<(usize, usize, usize), (Vec<Scalar>, Scalar)> = BTreeMap::new();
    for (ri, rel) in relations.iter().enumerate() {
        assert_eq!(rel.terms.len(), n, "relation arity");
        let mut l = rel.target.den().clone();
        for t in &rel.terms {
            l = lcm(&l, t.den());
        }
        let clear = |f: &BiRat| -> BiPoly {
            if f.is_zero() {
                return BiPoly::zero();
            }
            &f.num().clone() * &l.div_exact(f.den()).expect("lcm is a multiple")
        };
        for (j, t) in rel.terms.iter().enumerate() {
            for (a, b, s) in clear(t).terms() {
                let e = rows.entry((ri, a, b)).or_insert_with(|| (vec![Scalar::zero(); n], Scalar::zero()));
                e.0[j] = s.clone();
            }
        }
        for (a, b, s) in clear(&rel.target).terms() {
            let e = rows.entry((ri, a, b)).or_insert_with(|| (vec![Scalar::zero(); n], Scalar::zero()));
            e.1 = s.clone();
        }
    }
    let (lhs, rhs): (Vec<Vec<Scalar>>, Vec<Scalar>) = rows.into_values().unzip();
    if lhs.is_empty() {
        let mut basis = Vec::new();
        for k in 0..n {
            let mut v = vec![Scalar::zero(); n];
            v[k] = Scalar::one();
            basis.push(v);
        }
        return Ok(Solution { particular: vec![Scalar::zero(); n], homogeneous: basis });
    }
    let m = if n == 0 { Matrix::zeros(lhs.len(), 0) } else { Matrix::from_rows(lhs) };
    match m.solve(&rhs) {
        Some((particular, homogeneous)) => Ok(Solution { particular, homogeneous }),
        None => Err(Error::NoSolution),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, usize, usize)]) -> BiRat {
        BiRat::from_poly(BiPoly::from_int_terms(t))
    }

    #[test]
    fn scalar_multiple() {
        let sol = coeff_match_solve(1, &[Relation::new(vec![BiRat::x()], bp(&[(2, 1, 0)]))]).unwrap();
        assert_eq!(sol.particular, vec![Scalar::from_i64(2)]);
        assert!(sol.is_unique());
    }

    #[test]
    fn outside_span() {
        let r = Relation::new(vec![BiRat::x(), bp(&[(1, 0, 2)])], bp(&[(2, 1, 1)]));
        assert!(matches!(coeff_match_solve(2, &[r]), Err(Error::NoSolution)));
    }

    #[test]
    fn shift_equation_in_quadratics() {
        // q - q' = -x^2 with q = u0 + u1 x + u2 x^2
        let terms = vec![bp(&[(1, 0, 0)]), bp(&[(1, 1, 0), (-1, 0, 0)]), bp(&[(1, 2, 0), (-2, 1, 0)])];
        let sol = coeff_match_solve(3, &[Relation::new(terms, bp(&[(-1, 2, 0)]))]).unwrap();
        let expect: Vec<Scalar> = [-2, -2, -1].iter().map(|&v| Scalar::from_i64(v)).collect();
        assert_eq!(sol.particular, expect);
    }

    #[test]
    fn rational_terms_are_cleared() {
        // u / x + v y / x = (1 + 2y) / x
        let t1 = BiRat::new(BiPoly::one(), BiPoly::x());
        let t2 = BiRat::new(BiPoly::y(), BiPoly::x());
        let target = BiRat::new(BiPoly::from_int_terms(&[(1, 0, 0), (2, 0, 1)]), BiPoly::x());
        let sol = coeff_match_solve(2, &[Relation::new(vec![t1, t2], target)]).unwrap();
        assert_eq!(sol.particular, vec![Scalar::one(), Scalar::from_i64(2)]);
    }
}
