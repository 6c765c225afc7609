use std::fmt;

use super::field::VectorField;
use crate::exact_algebra::{BiPoly, BiRat};

/// Effective divisor in the affine chart: pairwise coprime square-free components
/// with multiplicities. Irreducible factors sharing all multiplicities may stay grouped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    pub components: Vec<(BiPoly, usize)>,
}

impl Divisor {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(|(q, m)| q.total_degree() * m).sum()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(q, m)| format!("{}:{}", q, m)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Item of a coprime refinement: a square-free factor and its multiplicity in each component.
struct Piece {
    q: BiPoly,
    m: [usize; 2],
}

fn coprime_refinement(mut pieces: Vec<Piece>) -> Vec<Piece> {
    'outer: loop {
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let g = pieces[i].q.gcd(&pieces[j].q);
                if g.is_constant() {
                    continue;
                }
                let b = pieces.remove(j);
                let a = pieces.remove(i);
                let m = [a.m[0] + b.m[0], a.m[1] + b.m[1]];
                for (q, mm) in [(a.q.div_exact(&g).unwrap(), a.m), (b.q.div_exact(&g).unwrap(), b.m), (g, m)] {
                    if !q.is_constant() {
                        pieces.push(Piece { q: q.normalized(), m: mm });
                    }
                }
                continue 'outer;
            }
        }
        return pieces;
    }
}

fn polar_pieces(x: &VectorField) -> Vec<Piece> {
    let mut pieces = Vec::new();
    for (k, c) in [&x.px, &x.py].into_iter().enumerate() {
        for (q, m) in c.den().squarefree() {
            let mut mm = [0, 0];
            mm[k] = m;
            pieces.push(Piece { q, m: mm });
        }
    }
    let mut out = coprime_refinement(pieces);
    out.sort_by(|a, b| (a.q.total_degree(), a.q.to_string()).cmp(&(b.q.total_degree(), b.q.to_string())));
    out
}

/// Union of the denominator divisors of both components, with maximal multiplicity.
pub fn polar_divisor(x: &VectorField) -> Divisor {
    Divisor { components: polar_pieces(x).into_iter().map(|p| (p.q, p.m[0].max(p.m[1]))).collect() }
}

/// Per-component verdicts of the tangency test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyReport {
    pub tangent: bool,
    pub components: Vec<(BiPoly, bool)>,
}

/// Each polar component `q` must be invariant: after clearing the pole along `q`,
/// `q` divides `P q_x + Q q_y`.
pub fn polar_tangency_check(x: &VectorField) -> TangencyReport {
    let mut components = Vec::new();
    for (q, m) in polar_divisor(x).components {
        let qm = BiRat::from_poly(q.pow(m as u32));
        let p = &x.px * &qm;
        let r = &x.py * &qm;
        let qr = BiRat::from_poly(q.clone());
        let e = &(&p * &qr.dx()) + &(&r * &qr.dy());
        let ok = e.num().div_exact(&q).is_some();
        components.push((q, ok));
    }
    TangencyReport { tangent: components.iter().all(|(_, ok)| *ok), components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_fields::SurfaceModel;

    const S: SurfaceModel = SurfaceModel::F(0);

    #[test]
    fn poles_of_simple_fields() {
        let inv_y = VectorField::vertical(S, BiRat::new(BiPoly::one(), BiPoly::y()));
        assert_eq!(polar_divisor(&inv_y).components, vec![(BiPoly::y(), 1)]);
        assert!(!polar_tangency_check(&inv_y).tangent);
        let inv_x = VectorField::vertical(S, BiRat::new(BiPoly::one(), BiPoly::x()));
        assert_eq!(polar_divisor(&inv_x).components, vec![(BiPoly::x(), 1)]);
        assert!(polar_tangency_check(&inv_x).tangent);
    }

    #[test]
    fn multiplicities_are_maximal() {
        let d1 = BiPoly::x().pow(2);
        let d2 = &BiPoly::x() * &BiPoly::y();
        let x = VectorField::new(S, BiRat::new(BiPoly::one(), d1), BiRat::new(BiPoly::one(), d2));
        let d = polar_divisor(&x);
        assert_eq!(d.components, vec![(BiPoly::x(), 2), (BiPoly::y(), 1)]);
    }

    #[test]
    fn polynomial_fields_have_no_poles() {
        let x = VectorField::from_terms(S, &[(1, 2, 0)], &[(1, 0, 1)]);
        assert!(polar_divisor(&x).is_empty());
        assert!(polar_tangency_check(&x).tangent);
    }
}
