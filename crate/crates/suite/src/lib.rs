//! Random instances and exact identity checks shared by the property suites and the
//! acceptance run.

#[cfg(test)]
mod properties;

use birflow::exact_algebra::{BiPoly, BiRat, Matrix, Poly, Scalar, UniRat};
use birflow::integrability::{extract_quadratic, Mat2, VerticalQuadratic};
use birflow::normal_forms::{phi_iso, projective_map, TracelessMatrix3};
use birflow::vector_fields::{lie_bracket, pullback, BirationalMap, SurfaceModel, VectorField};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const S: SurfaceModel = SurfaceModel::F(0);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of monomials `x^i y^j` with `i + j <= deg`.
pub fn monomials(deg: usize) -> usize {
    (deg + 1) * (deg + 2) / 2
}

/// Polynomial whose coefficients follow the graded order `1, x, y, x^2, x y, y^2, ...`.
pub fn poly_from(c: &[i64], deg: usize) -> BiPoly {
    let mut terms = Vec::new();
    let mut k = 0;
    for d in 0..=deg {
        for j in 0..=d {
            if let Some(&v) = c.get(k) {
                terms.push((v, d - j, j));
            }
            k += 1;
        }
    }
    BiPoly::from_int_terms(&terms)
}

/// Polynomial field from `2 * monomials(deg)` coefficients.
pub fn field_from(c: &[i64], deg: usize) -> VectorField {
    let m = monomials(deg);
    VectorField::new(S, BiRat::from_poly(poly_from(&c[..m], deg)), BiRat::from_poly(poly_from(&c[m..2 * m], deg)))
}

/// Small coefficients, most of them zero.
pub fn sparse(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| if rng.gen_bool(0.35) { rng.gen_range(-3..=3) } else { 0 }).collect()
}

pub fn random_field(rng: &mut impl Rng, deg: usize) -> VectorField {
    field_from(&sparse(rng, 2 * monomials(deg)), deg)
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_i64(n)
}

pub fn gauss(re: i64, im: i64) -> Scalar {
    &int(re) + &(&Scalar::i() * &int(im))
}

pub fn xpoly(c: &[i64]) -> UniRat {
    UniRat::from_poly(Poly::from_i64s(c))
}

/// `(a x + b y + e, c x + d y + f)`, invertible when `a d - b c != 0`.
pub fn affine_map(p: [i64; 6]) -> Option<BirationalMap> {
    let [a, b, c, d, e, f] = p;
    if a * d - b * c == 0 {
        return None;
    }
    let f1 = BiRat::from_poly(BiPoly::from_int_terms(&[(a, 1, 0), (b, 0, 1), (e, 0, 0)]));
    let f2 = BiRat::from_poly(BiPoly::from_int_terms(&[(c, 1, 0), (d, 0, 1), (f, 0, 0)]));
    BirationalMap::new(S, S, f1, f2).ok()
}

/// `(x^a y^b, x^c y^d)` for a unimodular exponent matrix.
pub fn monomial_map(m: [[i64; 2]; 2]) -> Option<BirationalMap> {
    let [[a, b], [c, d]] = m;
    let det = a * d - b * c;
    if det.abs() != 1 {
        return None;
    }
    let mono = |p: i64, q: i64| &BiRat::x().pow(p) * &BiRat::y().pow(q);
    // inverse exponents are the adjugate divided by the determinant
    let (ia, ib, ic, id) = (d * det, -b * det, -c * det, a * det);
    BirationalMap::with_inverse(S, S, mono(a, b), mono(c, d), mono(ia, ib), mono(ic, id)).ok()
}

/// Product of a few elementary integer matrices, with an occasional swap; entries stay
/// within 3 so composed monomial maps keep small exponents.
pub fn unimodular(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let mul = |p: [[i64; 2]; 2], q: [[i64; 2]; 2]| {
        let g = |i: usize, j: usize| p[i][0] * q[0][j] + p[i][1] * q[1][j];
        [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]]
    };
    loop {
        let mut m = [[1, 0], [0, 1]];
        for _ in 0..rng.gen_range(1..=3) {
            let k = rng.gen_range(-2..=2);
            let e = match rng.gen_range(0..3) {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                _ => [[0, 1], [1, 0]],
            };
            m = mul(m, e);
        }
        if m.iter().flatten().all(|v| v.abs() <= 3) {
            return m;
        }
    }
}

pub fn random_affine(rng: &mut impl Rng) -> BirationalMap {
    loop {
        let p = [0; 6].map(|_| rng.gen_range(-2..=2));
        if let Some(f) = affine_map(p) {
            return f;
        }
    }
}

pub fn random_monomial(rng: &mut impl Rng) -> BirationalMap {
    monomial_map(unimodular(rng)).expect("unimodular")
}

pub fn random_map(rng: &mut impl Rng) -> BirationalMap {
    if rng.gen_bool(0.5) {
        random_affine(rng)
    } else {
        random_monomial(rng)
    }
}

/// `[X, Y] = -[Y, X]` and the Jacobi sum vanishes.
pub fn jacobi_and_antisymmetry(x: &VectorField, y: &VectorField, z: &VectorField) -> bool {
    let b = |u: &VectorField, v: &VectorField| lie_bracket(u, v).unwrap();
    if b(x, y) != -&b(y, x) {
        return false;
    }
    let sum = &(&b(x, &b(y, z)) + &b(y, &b(z, x))) + &b(z, &b(x, y));
    sum.is_zero()
}

/// `(f o g)^* Y = g^* f^* Y`, `f^*[X, Y] = [f^* X, f^* Y]` and `(f^{-1})^* f^* Y = Y`.
pub fn functorial(f: &BirationalMap, g: &BirationalMap, x: &VectorField, y: &VectorField) -> bool {
    let fg = f.compose(g).unwrap();
    let composed = pullback(y, &fg).unwrap() == pullback(&pullback(y, f).unwrap(), g).unwrap();
    let bracket = pullback(&lie_bracket(x, y).unwrap(), f).unwrap()
        == lie_bracket(&pullback(x, f).unwrap(), &pullback(y, f).unwrap()).unwrap();
    let back = pullback(&pullback(y, f).unwrap(), &f.inverse()).unwrap() == *y;
    composed && bracket && back
}

pub fn gaussian_matrix(rng: &mut impl Rng, n: usize, range: i64) -> Vec<Vec<Scalar>> {
    (0..n).map(|_| (0..n).map(|_| gauss(rng.gen_range(-range..=range), rng.gen_range(-range..=range))).collect()).collect()
}

pub fn random_traceless(rng: &mut impl Rng) -> TracelessMatrix3 {
    let mut rows = gaussian_matrix(rng, 3, 2);
    let t = &rows[0][0] + &rows[1][1];
    rows[2][2] = -t;
    TracelessMatrix3::new(Matrix::from_rows(rows)).unwrap()
}

/// Upper triangular with Gaussian units and small entries, times a signed permutation, det 1.
pub fn random_sl3(rng: &mut impl Rng) -> Matrix {
    let units = [int(1), int(-1), Scalar::i(), -&Scalar::i()];
    let d1 = units[rng.gen_range(0..4)].clone();
    let d2 = units[rng.gen_range(0..4)].clone();
    let d3 = (&d1 * &d2).inv();
    let off = |rng: &mut dyn rand::RngCore| gauss(rng.gen_range(-2..=2), rng.gen_range(-1..=1));
    let z = Scalar::zero();
    let u = Matrix::from_rows(vec![
        vec![d1, off(rng), off(rng)],
        vec![z.clone(), d2, off(rng)],
        vec![z.clone(), z, d3],
    ]);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let p = perms[rng.gen_range(0..6)];
    let mut pm = Matrix::zeros(3, 3);
    for (i, &j) in p.iter().enumerate() {
        pm.set(i, j, int(1));
    }
    let sign = pm.det();
    (&u * &pm).scale(&sign)
}

/// `pullback(Phi(A), [C]) = Phi(C^{-1} A C)`.
pub fn phi_correspondence(a: &TracelessMatrix3, c: &Matrix) -> bool {
    let p2 = SurfaceModel::P2;
    let map = projective_map(c, p2).unwrap();
    let ci = c.inverse().unwrap();
    let conj = TracelessMatrix3::new(&(&ci * a.matrix()) * c).unwrap();
    pullback(&phi_iso(a, p2), &map).unwrap() == phi_iso(&conj, p2)
}

/// `X(q)` is a multiple of `q = x^2 + y^2 + 1`.
pub fn preserves_conic(x: &VectorField) -> bool {
    let q = BiRat::from_poly(BiPoly::from_int_terms(&[(1, 2, 0), (1, 0, 2), (1, 0, 0)]));
    (&x.apply(&q) / &q).is_poly()
}

/// A det-1 matrix over `k(x)` built from shears in `k[x]` and a constant diagonal.
pub fn random_sl2_over_kx(rng: &mut impl Rng) -> Mat2 {
    let mut m = Mat2::identity();
    for _ in 0..rng.gen_range(1..=3) {
        let p = xpoly(&[rng.gen_range(-2..=2), rng.gen_range(-1..=1)]);
        let e = if rng.gen_bool(0.5) {
            Mat2::new([[UniRat::one(), p], [UniRat::zero(), UniRat::one()]])
        } else {
            Mat2::new([[UniRat::one(), UniRat::zero()], [p, UniRat::one()]])
        };
        m = m.mul(&e);
    }
    let r = UniRat::constant(int(*[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap()));
    m.mul(&Mat2::new([[r.clone(), UniRat::zero()], [UniRat::zero(), r.inv()]]))
}

pub fn random_quadratic(rng: &mut impl Rng) -> VerticalQuadratic {
    let mut c = || xpoly(&[0; 4].map(|_| rng.gen_range(-2..=2)));
    loop {
        let q = VerticalQuadratic::new(c(), c(), c());
        if !q.is_zero() {
            return q;
        }
    }
}

/// A conjugate of `d/dy`, `y d/dy` or `(y^2 - 2) d/dy`, so the discriminant is constant.
pub fn random_integrable(rng: &mut impl Rng) -> VerticalQuadratic {
    let base = match rng.gen_range(0..3) {
        0 => VerticalQuadratic::new(UniRat::zero(), UniRat::zero(), UniRat::one()),
        1 => VerticalQuadratic::new(UniRat::zero(), UniRat::constant(Scalar::from_ratio(1, 2)), UniRat::zero()),
        _ => VerticalQuadratic::new(UniRat::one(), UniRat::zero(), UniRat::constant(int(-2))),
    };
    conjugate(&base, &random_sl2_over_kx(rng))
}

/// The quadratic of `pullback(q, mobius(m))`.
pub fn conjugate(q: &VerticalQuadratic, m: &Mat2) -> VerticalQuadratic {
    let pulled = pullback(&q.to_field(S), &m.mobius_map(S).unwrap()).unwrap();
    extract_quadratic(&pulled).unwrap().expect("Moebius pullback stays quadratic")
}
