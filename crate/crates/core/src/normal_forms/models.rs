//! Closed-form flows of the catalog fields.

use super::label::NormalFormLabel;
use crate::exact_algebra::Scalar;
use crate::integrability::{Flow, Sym, SymFrac, SymPoly};
use crate::vector_fields::SurfaceModel;

fn v(s: Sym) -> SymPoly {
    SymPoly::var(s)
}

/// The flow of `label.field(s)`, with `E_j` standing for `exp(rate_j t)`.
pub fn model_flow(label: &NormalFormLabel, s: SurfaceModel) -> Flow {
    let (x, y, t) = (v(Sym::X), v(Sym::Y), v(Sym::T));
    let e = v(Sym::Et(0));
    let one = Scalar::one;
    let (f1, f2, rates) = match label {
        NormalFormLabel::T => (x, &y + &t, vec![]),
        NormalFormLabel::L => (x, &e * &y, vec![one()]),
        NormalFormLabel::J => (&x + &t, &e * &y, vec![one()]),
        NormalFormLabel::Hgamma(g) => (&e * &x, &v(Sym::Et(1)) * &y, vec![one(), g.clone()]),
        NormalFormLabel::N => {
            let half = t.pow(2).scale(&Scalar::from_ratio(1, 2));
            (&x + &t, &(&y + &(&t * &x)) + &half, vec![])
        }
        NormalFormLabel::Rm(m) => {
            let inner = &y + &(&t * &x.pow(*m));
            (&e * &x, &e.pow(*m) * &inner, vec![one()])
        }
        NormalFormLabel::VerticalPoly(p) => {
            let px = SymPoly::from_x_poly(p);
            (x, &y + &(&t * &px), vec![])
        }
        NormalFormLabel::DxPlusEps { n, eps } => {
            let k = *n + 1;
            let shifted = &x + &t;
            let f2 = if *eps {
                let c = Scalar::from_ratio(1, k as i64);
                &y + &(&shifted.pow(k) - &x.pow(k)).scale(&c)
            } else {
                y
            };
            (shifted, f2, vec![])
        }
    };
    Flow::new(s, rates, SymFrac::from_poly(f1), SymFrac::from_poly(f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Poly;

    #[test]
    fn every_model_flow_generates_its_field() {
        let s = SurfaceModel::F(2);
        let labels = [
            NormalFormLabel::T,
            NormalFormLabel::N,
            NormalFormLabel::J,
            NormalFormLabel::L,
            NormalFormLabel::Hgamma(Scalar::from_ratio(-3, 2)),
            NormalFormLabel::Rm(0),
            NormalFormLabel::Rm(2),
            NormalFormLabel::VerticalPoly(Poly::from_i64s(&[1, 0, 1])),
            NormalFormLabel::DxPlusEps { n: 2, eps: true },
            NormalFormLabel::DxPlusEps { n: 1, eps: false },
        ];
        for l in labels {
            let f = model_flow(&l, s);
            assert!(f.is_identity_at_zero(), "{}", l);
            assert!(f.generates(&l.field(s)), "{}", l);
            assert!(f.satisfies_group_law(), "{}", l);
        }
    }
}
