//! Named algebras: field bases on model surfaces and abstract Borel tensors.

use std::fmt;
use std::str::FromStr;

use super::algebra::{structure_constants, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::exact_algebra::{BiPoly, BiRat, Matrix, Scalar};
use crate::normal_forms::{phi_iso, TracelessMatrix3};
use crate::vector_fields::{AlgebraSpace, SurfaceModel, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Bn(u32),
    AutP2,
    AutF0,
    AutFn(u32),
    G0,
    Gn(u32),
    G2Tilde,
    G4Tilde,
    BorelA2,
    BorelB2,
    BorelG2,
    A1xA1,
}

impl CatalogName {
    pub const FIXED: [CatalogName; 9] = [
        CatalogName::AutP2,
        CatalogName::AutF0,
        CatalogName::G0,
        CatalogName::G2Tilde,
        CatalogName::G4Tilde,
        CatalogName::BorelA2,
        CatalogName::BorelB2,
        CatalogName::BorelG2,
        CatalogName::A1xA1,
    ];
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Bn(n) => write!(f, "Bn({})", n),
            CatalogName::AutP2 => write!(f, "AutP2"),
            CatalogName::AutF0 => write!(f, "AutF0"),
            CatalogName::AutFn(n) => write!(f, "AutFn({})", n),
            CatalogName::G0 => write!(f, "g0"),
            CatalogName::Gn(n) => write!(f, "gn({})", n),
            CatalogName::G2Tilde => write!(f, "g2tilde"),
            CatalogName::G4Tilde => write!(f, "g4tilde"),
            CatalogName::BorelA2 => write!(f, "BorelA2"),
            CatalogName::BorelB2 => write!(f, "BorelB2"),
            CatalogName::BorelG2 => write!(f, "BorelG2"),
            CatalogName::A1xA1 => write!(f, "A1xA1"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(s.to_string());
        let t = s.trim();
        if let Some(fixed) = CatalogName::FIXED.iter().find(|c| c.to_string() == t) {
            return Ok(*fixed);
        }
        let open = t.find('(').ok_or_else(unknown)?;
        let arg: u32 = t[open + 1..].strip_suffix(')').ok_or_else(unknown)?.trim().parse().map_err(|_| unknown())?;
        match &t[..open] {
            "Bn" => Ok(CatalogName::Bn(arg)),
            "AutFn" => Ok(CatalogName::AutFn(arg)),
            "gn" if arg >= 1 => Ok(CatalogName::Gn(arg)),
            _ => Err(unknown()),
        }
    }
}

fn term(c: Scalar, i: usize, j: usize) -> BiRat {
    BiRat::from_poly(BiPoly::monomial(c, i, j))
}

fn field(s: SurfaceModel, px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]) -> VectorField {
    VectorField::from_terms(s, px, py)
}

/// `(d/dy, y d/dy, y^2 d/dy)`.
pub fn g0_basis() -> Vec<VectorField> {
    let s = SurfaceModel::F(0);
    vec![field(s, &[], &[(1, 0, 0)]), field(s, &[], &[(1, 0, 1)]), field(s, &[], &[(1, 0, 2)])]
}

/// `(d/dx, x d/dx + n/2 y d/dy, x^2 d/dx + n x y d/dy)`.
pub fn gn_basis(n: u32) -> Vec<VectorField> {
    let s = SurfaceModel::F(n);
    let half = Scalar::from_ratio(n as i64, 2);
    vec![
        VectorField::d_x(s),
        VectorField::new(s, BiRat::x(), term(half, 0, 1)),
        VectorField::new(s, term(Scalar::one(), 2, 0), term(Scalar::from_i64(n as i64), 1, 1)),
    ]
}

/// `(d/dx + d/dy, x d/dx + y d/dy, x^2 d/dx + y^2 d/dy)`.
pub fn g2tilde_basis() -> Vec<VectorField> {
    let s = SurfaceModel::F(0);
    vec![
        field(s, &[(1, 0, 0)], &[(1, 0, 0)]),
        field(s, &[(1, 1, 0)], &[(1, 0, 1)]),
        field(s, &[(1, 2, 0)], &[(1, 0, 2)]),
    ]
}

/// The rotation algebra preserving `x^2 + y^2 + 1`.
pub fn g4tilde_basis() -> Vec<VectorField> {
    let s = SurfaceModel::P2;
    vec![
        field(s, &[(1, 2, 0), (1, 0, 0)], &[(1, 1, 1)]),
        field(s, &[(1, 1, 1)], &[(1, 0, 2), (1, 0, 0)]),
        field(s, &[(1, 0, 1)], &[(-1, 1, 0)]),
    ]
}

/// `E_ij` with `i != j` and the diagonal pair `E_11 - E_22`, `E_22 - E_33`, realized on `P2`.
fn sl3_fields(upper_only: bool) -> Vec<VectorField> {
    let mut mats = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j && (!upper_only || i < j) {
                let mut m = Matrix::zeros(3, 3);
                m.set(i, j, Scalar::one());
                mats.push(m);
            }
        }
    }
    for k in 0..2 {
        let mut m = Matrix::zeros(3, 3);
        m.set(k, k, Scalar::one());
        m.set(k + 1, k + 1, -Scalar::one());
        mats.push(m);
    }
    mats.into_iter()
        .map(|m| phi_iso(&TracelessMatrix3::new(m).expect("traceless"), SurfaceModel::P2))
        .collect()
}

type Tensor = Vec<Vec<Vec<Scalar>>>;

fn empty(n: usize) -> Tensor {
    vec![vec![vec![Scalar::zero(); n]; n]; n]
}

fn set(c: &mut Tensor, i: usize, j: usize, k: usize, v: Scalar) {
    c[j][i][k] = -&v;
    c[i][j][k] = v;
}

/// Borel subalgebra with Cartan elements `h_1, h_2` acting on the root vector
/// `v_(a, b)` by `a` and `b`, and the given brackets of root vectors.
fn borel_tensor(roots: &[(i64, i64)], brackets: &[((i64, i64), (i64, i64), i64)]) -> Result<AlgebraPresentation> {
    let n = roots.len() + 2;
    let idx = |r: (i64, i64)| roots.iter().position(|&q| q == r).expect("root") + 2;
    let mut c = empty(n);
    for &(a, b) in roots {
        let k = idx((a, b));
        set(&mut c, 0, k, k, Scalar::from_i64(a));
        set(&mut c, 1, k, k, Scalar::from_i64(b));
    }
    for &(r, s, v) in brackets {
        let t = idx((r.0 + s.0, r.1 + s.1));
        set(&mut c, idx(r), idx(s), t, Scalar::from_i64(v));
    }
    AlgebraPresentation::from_constants(c)
}

/// `sl2 x sl2` in the bases `(e, h, f)` with `[e, h] = e`, `[e, f] = 2h`, `[h, f] = f`.
fn a1xa1() -> Result<AlgebraPresentation> {
    let mut c = empty(6);
    for o in [0, 3] {
        set(&mut c, o, o + 1, o, Scalar::one());
        set(&mut c, o, o + 2, o + 1, Scalar::from_i64(2));
        set(&mut c, o + 1, o + 2, o + 2, Scalar::one());
    }
    AlgebraPresentation::from_constants(c)
}

pub fn builtin_catalog(name: CatalogName) -> Result<AlgebraPresentation> {
    let concrete = |b: Vec<VectorField>| structure_constants(&b);
    match name {
        CatalogName::Bn(n) => concrete(AlgebraSpace::BorelBn(n).basis()),
        CatalogName::AutP2 => concrete(sl3_fields(false)),
        CatalogName::AutF0 => concrete(AlgebraSpace::AutFn(0).basis()),
        CatalogName::AutFn(n) => concrete(AlgebraSpace::AutFn(n).basis()),
        CatalogName::G0 => concrete(g0_basis()),
        CatalogName::Gn(n) => concrete(gn_basis(n)),
        CatalogName::G2Tilde => concrete(g2tilde_basis()),
        CatalogName::G4Tilde => concrete(g4tilde_basis()),
        CatalogName::BorelA2 => concrete(sl3_fields(true)),
        CatalogName::BorelB2 => borel_tensor(&[(1, 0), (0, 1), (1, 1), (1, 2)], &[((1, 0), (0, 1), 1), ((0, 1), (1, 1), 2)]),
        CatalogName::BorelG2 => borel_tensor(
            &[(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
            &[
                ((1, 0), (0, 1), 1),
                ((1, 0), (1, 1), 2),
                ((1, 0), (2, 1), 3),
                ((0, 1), (3, 1), 1),
                ((1, 1), (2, 1), -3),
            ],
        ),
        CatalogName::A1xA1 => a1xa1(),
    }
}
