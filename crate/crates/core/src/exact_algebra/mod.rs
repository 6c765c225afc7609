//! Exact arithmetic: scalars, polynomials, rational functions and linear solving.

mod bipoly;
mod birat;
mod linalg;
mod poly;
mod scalar;
mod solve;
mod unirat;

pub use bipoly::BiPoly;
pub use birat::{BiRat, Var};
pub use linalg::Matrix;
pub use poly::Poly;
pub use scalar::{rational_sqrt, Extension, FieldContext, Gaussian, Scalar};
pub use solve::{coeff_match_solve, Relation, Solution};
pub use unirat::UniRat;

/// Wraps `s` in parentheses unless it is a single token.
pub(crate) fn paren(s: &str) -> String {
    let compound = s.chars().skip(1).any(|c| matches!(c, ' ' | '+' | '-' | '*' | '/')) || s.starts_with('-');
    if compound {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

/// Renders a sum of `coefficient * monomial` terms in the expression grammar.
pub(crate) fn format_terms<V: std::fmt::Display>(terms: &[(Scalar, Vec<(V, usize)>)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, mono)) in terms.iter().enumerate() {
        let m: Vec<String> = mono
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
            .collect();
        let m = m.join("*");
        let abs = c.clone().canonical_sign();
        let neg = &abs != c;
        let body = abs.to_string();
        let compound = body.chars().skip(1).any(|ch| ch == '+' || ch == '-');
        let body = if compound { format!("({})", body) } else { body };
        let term = if m.is_empty() {
            body
        } else if abs.is_one() {
            m
        } else {
            format!("{}*{}", body, m)
        };
        match (k, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (0, false) => out.push_str(&term),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
    }
    out
}
