//! Symbolic one-parameter flows with formal exponentials.

use std::fmt;

use super::quadratic::{integrability_test, Verdict};
use super::symbolic::{Sym, SymFrac, SymPoly};
use crate::error::{Error, Result};
use crate::exact_algebra::{FieldContext, Poly, Scalar};
use crate::vector_fields::{coordinates, lie_bracket, SurfaceModel, VectorField};

/// A map `(x, y) -> (F1, F2)` with entries in the symbol ring, where the formal
/// exponential `E_j` obeys `E_j(0) = 1`, `dE_j/dt = rate_j E_j` and `E_j(t+s) = E_j(t) E_j(s)`.
#[derive(Clone, Debug)]
pub struct Flow {
    pub surface: SurfaceModel,
    pub rates: Vec<Scalar>,
    pub map: [SymFrac; 2],
}

impl Flow {
    pub fn new(surface: SurfaceModel, rates: Vec<Scalar>, f1: SymFrac, f2: SymFrac) -> Self {
        Flow { surface, rates, map: [f1, f2] }
    }

    /// `d/dt` in the symbol ring.
    pub fn time_derivative(&self, f: &SymFrac) -> SymFrac {
        let mut acc = f.partial(Sym::T);
        for (j, r) in self.rates.iter().enumerate() {
            let e = SymFrac::from_poly(SymPoly::var(Sym::Et(j)).scale(r));
            acc = &acc + &(&e * &f.partial(Sym::Et(j)));
        }
        acc
    }

    fn zero_time(&self) -> Vec<(Sym, Scalar)> {
        let mut v = vec![(Sym::T, Scalar::zero())];
        v.extend((0..self.rates.len()).map(|j| (Sym::Et(j), Scalar::one())));
        v
    }

    pub fn at_zero(&self) -> [SymFrac; 2] {
        let z = self.zero_time();
        [self.map[0].eval(&z), self.map[1].eval(&z)]
    }

    /// The velocity at time zero.
    pub fn generator(&self) -> [SymFrac; 2] {
        let z = self.zero_time();
        [self.time_derivative(&self.map[0]).eval(&z), self.time_derivative(&self.map[1]).eval(&z)]
    }

    fn retime(&self, sum: bool) -> [SymFrac; 2] {
        let s = SymFrac::var(Sym::S);
        let t_new = if sum { &SymFrac::var(Sym::T) + &s } else { s };
        let es: Vec<SymFrac> = (0..self.rates.len())
            .map(|j| {
                let e = SymFrac::var(Sym::Es(j));
                if sum {
                    &SymFrac::var(Sym::Et(j)) * &e
                } else {
                    e
                }
            })
            .collect();
        let mut subs: Vec<(Sym, &SymFrac)> = vec![(Sym::T, &t_new)];
        subs.extend(es.iter().enumerate().map(|(j, e)| (Sym::Et(j), e)));
        [self.map[0].substitute(&subs), self.map[1].substitute(&subs)]
    }

    /// The flow at time `s`.
    pub fn at_s(&self) -> [SymFrac; 2] {
        self.retime(false)
    }

    /// The flow at time `t + s`.
    pub fn at_sum(&self) -> [SymFrac; 2] {
        self.retime(true)
    }

    pub fn is_identity_at_zero(&self) -> bool {
        self.at_zero() == [SymFrac::var(Sym::X), SymFrac::var(Sym::Y)]
    }

    pub fn generates(&self, x: &VectorField) -> bool {
        self.generator() == [SymFrac::from_birat(&x.px), SymFrac::from_birat(&x.py)]
    }

    /// `flow(t) o flow(s) = flow(t + s)`.
    pub fn satisfies_group_law(&self) -> bool {
        let fs = self.at_s();
        let subs = [(Sym::X, &fs[0]), (Sym::Y, &fs[1])];
        let composed = [self.map[0].substitute(&subs), self.map[1].substitute(&subs)];
        composed == self.at_sum()
    }

    /// Pullback of a rational field by the time-`t` map, `(Df)^{-1} (Y o f)`.
    pub fn pullback(&self, y: &VectorField) -> [SymFrac; 2] {
        let [f1, f2] = &self.map;
        let subs = [(Sym::X, f1), (Sym::Y, f2)];
        let y1 = SymFrac::from_birat(&y.px).substitute(&subs);
        let y2 = SymFrac::from_birat(&y.py).substitute(&subs);
        let (a, b, c, d) = (f1.partial(Sym::X), f1.partial(Sym::Y), f2.partial(Sym::X), f2.partial(Sym::Y));
        let jinv = (&(&a * &d) - &(&b * &c)).inv();
        let p = &(&(&d * &y1) - &(&b * &y2)) * &jinv;
        let q = &(&(&a * &y2) - &(&c * &y1)) * &jinv;
        [p, q]
    }

    /// Checks `Y_i(t)' = sum_j C_ij Y_j(t)` and `Y_i(0) = Y_i` for `Y_i(t)` the pullback of
    /// `basis[i]` by this flow and `[X, Y_i] = sum_j C_ij Y_j`.
    pub fn satisfies_adjoint_identity(&self, x: &VectorField, basis: &[VectorField]) -> Result<bool> {
        let mut c = Vec::new();
        for yi in basis {
            let br = lie_bracket(x, yi)?;
            c.push(coordinates(&br, basis).ok_or(Error::NotClosed(Box::new(br)))?);
        }
        let pulled: Vec<[SymFrac; 2]> = basis.iter().map(|y| self.pullback(y)).collect();
        let z = self.zero_time();
        for (i, yi) in basis.iter().enumerate() {
            let start = [pulled[i][0].eval(&z), pulled[i][1].eval(&z)];
            if start != [SymFrac::from_birat(&yi.px), SymFrac::from_birat(&yi.py)] {
                return Ok(false);
            }
            for k in 0..2 {
                let lhs = self.time_derivative(&pulled[i][k]);
                let mut rhs = SymFrac::from_poly(SymPoly::zero());
                for (j, cij) in c[i].iter().enumerate() {
                    if !cij.is_zero() {
                        let s = SymFrac::from_poly(SymPoly::constant(cij.clone()));
                        rhs = &rhs + &(&s * &pulled[j][k]);
                    }
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.map[0], self.map[1])
    }
}

fn to_sym(p: &Poly) -> SymPoly {
    SymPoly::from_x_poly(p)
}

type SymMat = [[SymPoly; 2]; 2];

fn mat_mul(a: &SymMat, b: &SymMat) -> SymMat {
    let g = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]]
}

/// `Q exp(tD) Q^{-1}` acting on the fiber, for an integrable vertical field.
/// With `kappa != 0` the symbol `E` has rate `2 kappa` and stands for `exp(tD)` up to scale.
pub fn vertical_flow(x: &VectorField, ctx: &FieldContext) -> Result<Flow> {
    let rep = integrability_test(x, ctx)?;
    if let Verdict::NotIntegrable(why) = &rep.verdict {
        return Err(Error::NotIntegrable(why.to_string()));
    }
    let q = rep.q.expect("integrable report carries Q");
    let kappa = rep.kappa.expect("integrable report carries kappa");
    let qc = q.clear_denominators();
    let qm: SymMat = [[to_sym(&qc[0][0]), to_sym(&qc[0][1])], [to_sym(&qc[1][0]), to_sym(&qc[1][1])]];
    let adj: SymMat = [[qm[1][1].clone(), -&qm[0][1]], [-&qm[1][0], qm[0][0].clone()]];
    let (mid, rates): (SymMat, Vec<Scalar>) = if kappa.is_zero() {
        ([[SymPoly::one(), SymPoly::var(Sym::T)], [SymPoly::zero(), SymPoly::one()]], Vec::new())
    } else {
        let e = SymPoly::var(Sym::Et(0));
        ([[e, SymPoly::zero()], [SymPoly::zero(), SymPoly::one()]], vec![&kappa * &Scalar::from_i64(2)])
    };
    let m = mat_mul(&mat_mul(&qm, &mid), &adj);
    let y = SymPoly::var(Sym::Y);
    let num = &(&m[0][0] * &y) + &m[0][1];
    let den = &(&m[1][0] * &y) + &m[1][1];
    Ok(Flow::new(x.surface, rates, SymFrac::var(Sym::X), SymFrac::new(num, den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: SurfaceModel = SurfaceModel::F(0);

    fn vert(t: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(S, &[], t)
    }

    fn flow(x: &VectorField) -> Flow {
        vertical_flow(x, &FieldContext::gaussian()).unwrap()
    }

    fn check_laws(x: &VectorField) {
        let f = flow(x);
        assert!(f.is_identity_at_zero(), "{}", f);
        assert!(f.generates(x), "{}", f);
        assert!(f.satisfies_group_law(), "{}", f);
    }

    #[test]
    fn translation_flow() {
        let f = flow(&VectorField::d_y(S));
        let t = SymPoly::var(Sym::T);
        assert_eq!(f.map[1], SymFrac::from_poly(&SymPoly::var(Sym::Y) + &t));
    }

    #[test]
    fn linear_flow() {
        let f = flow(&vert(&[(1, 0, 1)]));
        assert_eq!(f.rates, vec![Scalar::one()]);
        assert_eq!(f.map[1], SymFrac::from_poly(&SymPoly::var(Sym::Et(0)) * &SymPoly::var(Sym::Y)));
    }

    #[test]
    fn quadratic_flow() {
        let f = flow(&vert(&[(1, 0, 2)]));
        let y = SymPoly::var(Sym::Y);
        let den = &SymPoly::one() - &(&SymPoly::var(Sym::T) * &y);
        assert_eq!(f.map[1], SymFrac::new(y, den));
    }

    #[test]
    fn flow_laws_on_varied_fields() {
        check_laws(&vert(&[(1, 0, 2)]));
        check_laws(&vert(&[(1, 1, 0)]));
        check_laws(&vert(&[(1, 0, 2), (-1, 0, 0)]));
        // (x y^2 + 2y) d/dy: delta = 1
        check_laws(&vert(&[(1, 1, 2), (2, 0, 1)]));
    }

    #[test]
    fn adjoint_identity_for_linear_flow() {
        let x = vert(&[(1, 0, 1)]);
        let f = flow(&x);
        let dy = VectorField::d_y(S);
        let p = f.pullback(&dy);
        let einv = SymFrac::new(SymPoly::one(), SymPoly::var(Sym::Et(0)));
        assert_eq!(p, [SymFrac::from_poly(SymPoly::zero()), einv]);
        assert!(f.satisfies_adjoint_identity(&x, &[dy.clone()]).unwrap());
        let basis = [dy, vert(&[(1, 0, 1)]), vert(&[(1, 0, 2)])];
        assert!(f.satisfies_adjoint_identity(&x, &basis).unwrap());
    }

    #[test]
    fn non_integrable_has_no_flow() {
        assert!(matches!(
            vertical_flow(&vert(&[(1, 0, 2), (1, 1, 0)]), &FieldContext::gaussian()),
            Err(Error::NotIntegrable(_))
        ));
    }
}
