use std::fmt;

use crate::error::Result;
use crate::exact_algebra::{BiPoly, BiRat, Matrix, Poly, Scalar};
use crate::vector_fields::{pullback, BirationalMap, SurfaceModel, VectorField};

/// The catalog of single-field normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalFormLabel {
    /// `d/dy`.
    T,
    /// `d/dx + x d/dy`.
    N,
    /// `d/dx + y d/dy`.
    J,
    /// `x d/dx + gamma y d/dy`.
    Hgamma(Scalar),
    /// `y d/dy`.
    L,
    /// `x d/dx + (m y + x^m) d/dy`.
    Rm(u32),
    /// `p(x) d/dy` with `p` monic.
    VerticalPoly(Poly),
    /// `d/dx + eps x^n d/dy`.
    DxPlusEps { n: u32, eps: bool },
}

impl NormalFormLabel {
    pub fn field(&self, s: SurfaceModel) -> VectorField {
        let f = |px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]| VectorField::from_terms(s, px, py);
        match self {
            NormalFormLabel::T => f(&[], &[(1, 0, 0)]),
            NormalFormLabel::N => f(&[(1, 0, 0)], &[(1, 1, 0)]),
            NormalFormLabel::J => f(&[(1, 0, 0)], &[(1, 0, 1)]),
            NormalFormLabel::Hgamma(g) => VectorField::new(s, BiRat::x(), BiRat::y().scale(g)),
            NormalFormLabel::L => f(&[], &[(1, 0, 1)]),
            NormalFormLabel::Rm(m) => f(&[(1, 1, 0)], &[(*m as i64, 0, 1), (1, *m as usize, 0)]),
            NormalFormLabel::VerticalPoly(p) => VectorField::vertical(s, BiRat::from_poly(BiPoly::from_x_poly(p.clone()))),
            NormalFormLabel::DxPlusEps { n, eps } => {
                let py: &[(i64, usize, usize)] = if *eps { &[(1, *n as usize, 0)] } else { &[] };
                f(&[(1, 0, 0)], py)
            }
        }
    }

    /// `T`, `L`, `J` and `H_gamma` admit no further birational reduction.
    pub fn is_terminal(&self) -> bool {
        matches!(self, NormalFormLabel::T | NormalFormLabel::L | NormalFormLabel::J | NormalFormLabel::Hgamma(_))
    }
}

impl fmt::Display for NormalFormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormLabel::T => write!(f, "T"),
            NormalFormLabel::N => write!(f, "N"),
            NormalFormLabel::J => write!(f, "J"),
            NormalFormLabel::Hgamma(g) => write!(f, "H_gamma({})", g),
            NormalFormLabel::L => write!(f, "L"),
            NormalFormLabel::Rm(m) => write!(f, "R_m({})", m),
            NormalFormLabel::VerticalPoly(p) => write!(f, "VerticalPoly({})", p),
            NormalFormLabel::DxPlusEps { n, eps } => write!(f, "DxPlusEps({}, {})", n, u8::from(*eps)),
        }
    }
}

/// `pullback(input, conjugator)`, followed by `residual` when present, equals
/// `scale * label.field()`.
#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub input: VectorField,
    pub label: NormalFormLabel,
    pub scale: Scalar,
    pub conjugator: BirationalMap,
    /// The projective matrix behind `conjugator` for fields on the plane.
    pub matrix: Option<Matrix>,
    /// Second-stage birational reduction and the label it started from.
    pub residual: Option<(NormalFormLabel, BirationalMap)>,
}

impl ClassificationResult {
    pub fn normal_form(&self) -> VectorField {
        self.label.field(self.input.surface).scale(&self.scale)
    }

    /// Replays the witnesses on the input.
    pub fn verify(&self) -> Result<bool> {
        let mut x = pullback(&self.input, &self.conjugator)?;
        if let Some((_, r)) = &self.residual {
            x = pullback(&x, r)?;
        }
        Ok(x == self.normal_form())
    }
}
