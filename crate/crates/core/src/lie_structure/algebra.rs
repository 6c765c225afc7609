//! Structure constants, derived series and Killing form.

use crate::error::{Error, Result};
use crate::exact_algebra::{coeff_match_solve, Matrix, Relation, Scalar};
use crate::vector_fields::{coordinates, lie_bracket, VectorField};

/// `[e_i, e_j] = sum_k c[i][j][k] e_k`, optionally realized by concrete fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub basis: Option<Vec<VectorField>>,
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

/// One term of the derived series, as coordinate vectors in the ambient basis.
#[derive(Clone, Debug)]
pub struct DerivedTerm {
    pub dim: usize,
    pub span: Vec<Vec<Scalar>>,
    pub fields: Option<Vec<VectorField>>,
}

#[derive(Clone, Debug)]
pub struct KillingReport {
    pub killing: Matrix,
    pub is_solvable: bool,
    pub is_semisimple: bool,
}

fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

/// Row-reduced basis of the span of `vs`.
fn span_basis(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vs.to_vec()).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

impl AlgebraPresentation {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn from_constants(constants: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let a = AlgebraPresentation { basis: None, constants };
        if !a.is_antisymmetric() || !a.satisfies_jacobi() {
            return Err(Error::InvariantViolation("structure constants do not define a Lie algebra".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.constants.len()
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = zeros(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let w = ui * vj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&w * c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut e = zeros(self.dim());
        e[i] = Scalar::one();
        e
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.constants[i][j][k] == -&self.constants[j][i][k])))
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    if t1.iter().zip(&t2).zip(&t3).any(|((p, q), r)| !(&(p + q) + r).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `ad u` acting on coordinate columns.
    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.bracket(u, &self.unit(j))).collect();
        Matrix::from_columns(&cols)
    }

    pub fn killing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        (&self.ad(u) * &self.ad(v)).trace()
    }

    fn realize(&self, v: &[Scalar]) -> Option<VectorField> {
        self.basis.as_ref().map(|b| VectorField::combination(v, b))
    }
}

/// Structure constants of the span of `basis`.
pub fn structure_constants(basis: &[VectorField]) -> Result<AlgebraPresentation> {
    let n = basis.len();
    if let Some(first) = basis.first() {
        if basis.iter().any(|b| b.surface != first.surface) {
            return Err(Error::SurfaceMismatch);
        }
    }
    let rels = [
        Relation::homogeneous(basis.iter().map(|b| b.px.clone()).collect()),
        Relation::homogeneous(basis.iter().map(|b| b.py.clone()).collect()),
    ];
    if n > 0 && !coeff_match_solve(n, &rels)?.is_unique() {
        return Err(Error::NotIndependent);
    }
    let mut c = vec![vec![zeros(n); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let br = lie_bracket(&basis[i], &basis[j])?;
            let co = coordinates(&br, basis).ok_or_else(|| Error::NotClosed(Box::new(br.clone())))?;
            c[j][i] = co.iter().map(|s| -s).collect();
            c[i][j] = co;
        }
    }
    Ok(AlgebraPresentation { basis: Some(basis.to_vec()), constants: c })
}

/// `g, [g, g], ...` until the dimension reaches zero or stops dropping; the last
/// entry is the repeated or zero term.
pub fn derived_series(a: &AlgebraPresentation) -> Vec<DerivedTerm> {
    let n = a.dim();
    let term = |span: Vec<Vec<Scalar>>| DerivedTerm {
        dim: span.len(),
        fields: a.basis.as_ref().map(|_| span.iter().filter_map(|v| a.realize(v)).collect()),
        span,
    };
    let mut cur: Vec<Vec<Scalar>> = (0..n).map(|i| a.unit(i)).collect();
    let mut out = vec![term(cur.clone())];
    while !cur.is_empty() {
        let mut brs = Vec::new();
        for i in 0..cur.len() {
            for j in (i + 1)..cur.len() {
                let b = a.bracket(&cur[i], &cur[j]);
                if b.iter().any(|s| !s.is_zero()) {
                    brs.push(b);
                }
            }
        }
        let next = span_basis(&brs);
        let stalled = next.len() == cur.len();
        out.push(term(next.clone()));
        if stalled {
            break;
        }
        cur = next;
    }
    out
}

pub fn is_solvable_by_series(series: &[DerivedTerm]) -> bool {
    series.last().map_or(true, |t| t.dim == 0)
}

/// Killing matrix, Cartan's solvability criterion and the semisimplicity test.
pub fn killing_report(a: &AlgebraPresentation) -> Result<KillingReport> {
    let n = a.dim();
    let units: Vec<Vec<Scalar>> = (0..n).map(|i| a.unit(i)).collect();
    let ads: Vec<Matrix> = units.iter().map(|u| a.ad(u)).collect();
    let rows: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| (&ads[i] * &ads[j]).trace()).collect()).collect();
    let killing = if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
    let series = derived_series(a);
    let derived = series.get(1).map(|t| t.span.clone()).unwrap_or_default();
    let cartan = units.iter().all(|u| derived.iter().all(|v| a.killing(u, v).is_zero()));
    if cartan != is_solvable_by_series(&series) {
        return Err(Error::InvariantViolation("Cartan criterion disagrees with the derived series".into()));
    }
    let is_semisimple = n > 0 && !killing.det().is_zero();
    Ok(KillingReport { killing, is_solvable: cartan, is_semisimple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_fields::{AlgebraSpace, SurfaceModel};

    const S: SurfaceModel = SurfaceModel::F(0);

    fn v(t: &[(i64, usize, usize)]) -> VectorField {
        VectorField::from_terms(S, &[], t)
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn sl2_constants_and_killing() {
        let a = structure_constants(&[v(&[(1, 0, 0)]), v(&[(1, 0, 1)]), v(&[(1, 0, 2)])]).unwrap();
        // [e1, e2] = e1, [e1, e3] = 2 e2, [e2, e3] = e3
        assert_eq!(a.constants[0][1], vec![int(1), int(0), int(0)]);
        assert_eq!(a.constants[0][2], vec![int(0), int(2), int(0)]);
        assert_eq!(a.constants[1][2], vec![int(0), int(0), int(1)]);
        let k = killing_report(&a).unwrap();
        // tr(ad e1 ad e3) = -4, tr(ad e2 ad e2) = 2
        let expect = Matrix::from_i64(&[&[0, 0, -4], &[0, 2, 0], &[-4, 0, 0]]);
        assert_eq!(k.killing, expect);
        assert!(k.is_semisimple && !k.is_solvable);
        let dims: Vec<usize> = derived_series(&a).iter().map(|t| t.dim).collect();
        assert_eq!(dims, vec![3, 3]);
    }

    #[test]
    fn not_closed_witness() {
        let x = v(&[(1, 1, 0)]);
        match structure_constants(&[x, v(&[(1, 0, 2)])]) {
            Err(Error::NotClosed(w)) => assert_eq!(*w, v(&[(2, 1, 1)])),
            other => panic!("{:?}", other),
        }
        assert!(matches!(structure_constants(&[v(&[(1, 0, 0)]), v(&[(2, 0, 0)])]), Err(Error::NotIndependent)));
    }

    #[test]
    fn affine_and_abelian() {
        let dx = VectorField::d_x(S);
        let xdx = VectorField::from_terms(S, &[(1, 1, 0)], &[]);
        let a = structure_constants(&[dx.clone(), xdx]).unwrap();
        assert_eq!(a.constants[0][1], vec![int(1), int(0)]);
        let ab = structure_constants(&[dx, VectorField::d_y(S)]).unwrap();
        let dims: Vec<usize> = derived_series(&ab).iter().map(|t| t.dim).collect();
        assert_eq!(dims, vec![2, 0]);
        let one = structure_constants(&[VectorField::d_y(S)]).unwrap();
        let k = killing_report(&one).unwrap();
        assert!(k.is_solvable && !k.is_semisimple);
        assert!(k.killing.is_zero());
    }

    #[test]
    fn borel_series() {
        let a = structure_constants(&AlgebraSpace::BorelBn(2).basis()).unwrap();
        let series = derived_series(&a);
        let dims: Vec<usize> = series.iter().map(|t| t.dim).collect();
        // B' = <d/dx> + C_2[x] d/dy, and [d/dx, x^k d/dy] = k x^(k-1) d/dy
        assert_eq!(dims, vec![6, 4, 2, 0]);
        let f = series[2].fields.as_ref().unwrap();
        assert!(f.iter().all(|x| x.is_vertical() && !x.py.depends_on(crate::exact_algebra::Var::Y)));
        let k = killing_report(&a).unwrap();
        assert!(k.is_solvable && !k.is_semisimple);
    }
}
