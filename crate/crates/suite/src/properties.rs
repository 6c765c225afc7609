use birflow::exact_algebra::{coeff_match_solve, BiPoly, BiRat, FieldContext, Matrix, Relation, Scalar, UniRat};
use birflow::integrability::{integrability_test, vertical_flow, Mat2, VerticalModel};
use birflow::lie_structure::{
    builtin_catalog, classify_2dim, derived_series, g0_basis, g4tilde_basis, gn_basis, is_solvable_by_series,
    killing_report, sl2_complete_with, spans_equal, structure_constants, verify_sl2_triple, AlgebraPresentation,
    CatalogName, Sl2Model, Sl2Verdict, TwoDimLabel,
};
use birflow::normal_forms::{
    classify_p2, hgamma_relate, normalize_in_borel, phi_inv, phi_iso, NormalFormLabel, TracelessMatrix3,
};
use birflow::vector_fields::{
    lie_bracket, membership, polar_tangency_check, pullback, AlgebraSpace, SurfaceModel, VectorField,
};
use proptest::prelude::*;
use rand::Rng;

use crate::*;

const P2: SurfaceModel = SurfaceModel::P2;

fn coef() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![0, 0, 0, 0, -3, -2, -1, 1, 2, 3])
}

fn field(deg: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(coef(), 2 * monomials(deg)).prop_map(move |c| field_from(&c, deg))
}

fn bipoly(deg: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(coef(), monomials(deg)).prop_map(move |c| poly_from(&c, deg))
}

fn nonzero_bipoly(deg: usize) -> impl Strategy<Value = BiPoly> {
    bipoly(deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// `p/q + r/q * sqrt(2)` with Gaussian `p`, `r`.
fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -4i64..=4, -3i64..=3, -3i64..=3, 1i64..=5).prop_map(|(a, b, c, d, q)| {
        let root = FieldContext::gaussian().extend_by_sqrt(&int(2)).unwrap().root;
        let over = Scalar::from_ratio(1, q);
        &(&gauss(a, b) * &over) + &(&(&gauss(c, d) * &over) * &root)
    })
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

fn vert(t: &[(i64, usize, usize)]) -> VectorField {
    VectorField::from_terms(S, &[], t)
}

// exact arithmetic

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_cancels_common_factors(f in bipoly(2), g in nonzero_bipoly(2)) {
        let r = BiRat::new(&f * &g, g);
        prop_assert_eq!(&r, &BiRat::from_poly(f));
        prop_assert_eq!(BiRat::new(r.num().clone(), r.den().clone()), r);
    }

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv(), Scalar::one());
        }
    }

    #[test]
    fn solutions_satisfy_their_relations(
        u in prop::collection::vec(-3i64..=3, 3),
        t in prop::collection::vec(nonzero_bipoly(2), 3),
        d in nonzero_bipoly(1),
    ) {
        let terms: Vec<BiRat> = t.iter().map(|p| BiRat::new(p.clone(), d.clone())).collect();
        let target = terms.iter().zip(&u).fold(BiRat::zero(), |acc, (t, k)| &acc + &t.scale(&int(*k)));
        let sol = coeff_match_solve(3, &[Relation::new(terms.clone(), target.clone())]).unwrap();
        let back = terms.iter().zip(&sol.particular).fold(BiRat::zero(), |acc, (t, k)| &acc + &t.scale(k));
        prop_assert_eq!(back, target);
        for h in &sol.homogeneous {
            let zero = terms.iter().zip(h).fold(BiRat::zero(), |acc, (t, k)| &acc + &t.scale(k));
            prop_assert!(zero.is_zero());
        }
    }
}

// brackets and pullbacks

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(x in field(3), y in field(3), z in field(3)) {
        prop_assert!(jacobi_and_antisymmetry(&x, &y, &z));
    }

    #[test]
    fn pullback_is_functorial(s in seed(), x in field(2), y in field(2)) {
        let mut r = rng(s);
        let (f, g) = (random_map(&mut r), random_map(&mut r));
        prop_assert!(functorial(&f, &g, &x, &y));
    }

    #[test]
    fn membership_reconstructs(n in 0u32..4, c in prop::collection::vec(-3i64..=3, 8)) {
        let space = AlgebraSpace::AutFn(n);
        let coeffs: Vec<Scalar> = c.iter().take(space.dim()).map(|k| int(*k)).collect();
        let x = VectorField::combination(&coeffs, &space.basis());
        let got = membership(&x, space);
        prop_assert_eq!(got.as_ref(), Some(&coeffs));
        prop_assert_eq!(VectorField::combination(&got.unwrap(), &space.basis()), x);
    }
}

// vertical quadratics

/// A conjugate of an integrable model by a Moebius map with a pole at `x = -k`.
fn integrable_with_poles(s: u64) -> VectorField {
    let mut r = rng(s);
    let q = random_integrable(&mut r);
    let p = xpoly(&[r.gen_range(-2..=2), 1]);
    let m = Mat2::new([[p.clone(), UniRat::zero()], [UniRat::zero(), p.inv()]]);
    conjugate(&q, &m).to_field(S)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn discriminant_is_conjugation_invariant(s in seed()) {
        let mut r = rng(s);
        let q = random_quadratic(&mut r);
        let m = random_sl2_over_kx(&mut r);
        prop_assert_eq!(conjugate(&q, &m).delta(), q.delta());
    }

    #[test]
    fn regularizer_is_sound(s in seed()) {
        let x = integrable_with_poles(s);
        let rep = integrability_test(&x, &FieldContext::gaussian()).unwrap();
        prop_assert!(rep.is_integrable());
        let (model, nf) = rep.normal_form.clone().unwrap();
        let kappa = rep.kappa.clone().unwrap();
        let expect = match model {
            VerticalModel::T => VectorField::d_y(S),
            VerticalModel::L => VectorField::vertical(S, BiRat::y().scale(&(&kappa * &int(2)))),
        };
        prop_assert_eq!(&nf, &expect);
        prop_assert_eq!(pullback(&x, rep.conjugating_map.as_ref().unwrap()).unwrap(), expect);
    }

    #[test]
    fn integrable_fields_have_invariant_poles(s in seed()) {
        let x = integrable_with_poles(s);
        prop_assert!(integrability_test(&x, &FieldContext::gaussian()).unwrap().is_integrable());
        prop_assert!(polar_tangency_check(&x).tangent);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn flows_obey_their_laws(s in seed()) {
        let x = integrable_with_poles(s);
        let f = vertical_flow(&x, &FieldContext::gaussian()).unwrap();
        prop_assert!(f.is_identity_at_zero());
        prop_assert!(f.generates(&x));
        prop_assert!(f.satisfies_group_law());
    }
}

#[test]
fn adjoint_flow_identity() {
    let ctx = FieldContext::gaussian();
    let sl2 = g0_basis();
    for x in &sl2 {
        let f = vertical_flow(x, &ctx).unwrap();
        assert!(f.satisfies_adjoint_identity(x, &sl2).unwrap(), "{}", x);
    }
    let l = vert(&[(1, 0, 1)]);
    let f = vertical_flow(&l, &ctx).unwrap();
    assert!(f.satisfies_adjoint_identity(&l, &sl2[..1]).unwrap());
}

#[test]
fn negative_examples_fail_a_necessary_condition() {
    let ctx = FieldContext::gaussian();
    let rejected = [
        vert(&[(1, 0, 2), (1, 1, 0)]),
        vert(&[(1, 0, 3)]),
        VectorField::vertical(S, BiRat::new(BiPoly::one(), BiPoly::from_int_terms(&[(1, 0, 1), (-1, 1, 0)]))),
    ];
    for x in &rejected {
        let in_some_aut = (0..5).any(|n| membership(&x.on(SurfaceModel::F(n)), AlgebraSpace::AutFn(n)).is_some());
        let tangent = polar_tangency_check(x).tangent;
        let has_flow = vertical_flow(x, &ctx).is_ok();
        assert!(!tangent || !in_some_aut || !has_flow, "{}", x);
    }
}

// plane fields

fn traceless_seed() -> impl Strategy<Value = TracelessMatrix3> {
    seed().prop_map(|s| random_traceless(&mut rng(s)))
}

fn bracket_matrix(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

fn unit(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m.set(i, j, int(1));
    m
}

/// The sign with `[Phi(A), Phi(B)] = Phi(sign [A, B])`, found on pairs of off-diagonal units.
fn bracket_sign() -> Scalar {
    let mut sign = None;
    for (i, j, k, l) in [(0, 1, 1, 2), (1, 0, 0, 2), (0, 2, 2, 1), (2, 0, 0, 1)] {
        let (a, b) = (unit(i, j), unit(k, l));
        let lhs = lie_bracket(&phi_iso(&traceless(&a), P2), &phi_iso(&traceless(&b), P2)).unwrap();
        let c = traceless(&bracket_matrix(&a, &b));
        let s = [int(1), int(-1)].into_iter().find(|s| lhs == phi_iso(&c, P2).scale(s)).unwrap();
        assert!(sign.as_ref().is_none_or(|t| *t == s));
        sign = Some(s);
    }
    sign.unwrap()
}

fn traceless(m: &Matrix) -> TracelessMatrix3 {
    TracelessMatrix3::new(m.clone()).unwrap()
}

/// Matrices with eigenvalues in `Z`, covering the `T`, `N`, `J` and `H` Jordan types.
fn split_matrix(s: u64) -> Matrix {
    let mut r = rng(s);
    let types: [&[&[i64]]; 5] = [
        &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]],
        &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]],
        &[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]],
        &[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]],
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]],
    ];
    let d = Matrix::from_i64(types[r.gen_range(0..5)]);
    let c = random_sl3(&mut r);
    &(&c.inverse().unwrap() * &d) * &c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_matches_conjugation(a in traceless_seed(), s in seed()) {
        let c = random_sl3(&mut rng(s));
        prop_assert_eq!(c.det(), Scalar::one());
        prop_assert!(phi_correspondence(&a, &c));
    }

    #[test]
    fn phi_is_a_bracket_map_up_to_sign(a in traceless_seed(), b in traceless_seed()) {
        let sign = bracket_sign();
        let lhs = lie_bracket(&phi_iso(&a, P2), &phi_iso(&b, P2)).unwrap();
        let c = traceless(&bracket_matrix(a.matrix(), b.matrix()));
        prop_assert_eq!(lhs, phi_iso(&c, P2).scale(&sign));
    }

    #[test]
    fn phi_inverts(a in traceless_seed(), c in prop::collection::vec(-3i64..=3, 8)) {
        prop_assert_eq!(phi_inv(&phi_iso(&a, P2)).unwrap(), a);
        let coeffs: Vec<Scalar> = c.iter().map(|k| int(*k)).collect();
        let x = VectorField::combination(&coeffs, &AlgebraSpace::AutP2.basis());
        prop_assert_eq!(phi_iso(&phi_inv(&x).unwrap(), P2), x);
    }

    #[test]
    fn plane_label_is_conjugation_invariant(s in seed(), t in seed()) {
        let ctx = FieldContext::gaussian();
        let a = split_matrix(s);
        let c = random_sl3(&mut rng(t));
        let b = &(&c.inverse().unwrap() * &a) * &c;
        let (ra, _) = classify_p2(&phi_iso(&traceless(&a), P2), &ctx).unwrap();
        let (rb, _) = classify_p2(&phi_iso(&traceless(&b), P2), &ctx).unwrap();
        prop_assert_eq!(&ra.label, &rb.label);
        prop_assert!(ra.verify().unwrap() && rb.verify().unwrap());
    }

    #[test]
    fn borel_witnesses_stay_in_the_borel(n in 1u32..4, c in prop::collection::vec(-2i64..=2, 7)) {
        let space = AlgebraSpace::BorelBn(n);
        let basis = space.basis();
        let coeffs: Vec<Scalar> = c.iter().take(space.dim()).map(|k| int(*k)).collect();
        let x = VectorField::combination(&coeffs, &basis);
        prop_assume!(!x.is_zero());
        let r = normalize_in_borel(&x, n).unwrap();
        prop_assert!(r.verify().unwrap());
        for b in &basis {
            let pulled = pullback(b, &r.conjugator).unwrap();
            prop_assert!(membership(&pulled, space).is_some(), "{} by {}", b, r.conjugator);
        }
    }

    #[test]
    fn hgamma_transport_is_exact(s in seed(), p in -5i64..=5, q in 1i64..=4, im in 0i64..=2) {
        let gamma = &Scalar::from_ratio(p, q) + &(&Scalar::i() * &int(im));
        let m = unimodular(&mut rng(s));
        let den = &(&int(m[1][0]) * &gamma) + &int(m[1][1]);
        prop_assume!(!den.is_zero());
        let r = hgamma_relate(&gamma, m).unwrap();
        let h = |g: &Scalar| NormalFormLabel::Hgamma(g.clone()).field(S);
        prop_assert!(r.verified);
        prop_assert_eq!(pullback(&h(&gamma), &r.map).unwrap(), h(&r.gamma_prime).scale(&r.scale));
    }
}

#[test]
fn terminal_labels_are_distinguished() {
    let ctx = FieldContext::gaussian();
    let kappa = |x: &VectorField| integrability_test(x, &ctx).unwrap().kappa.unwrap();
    assert!(kappa(&NormalFormLabel::T.field(S)).is_zero());
    assert!(!kappa(&NormalFormLabel::L.field(S)).is_zero());
    // J has a repeated eigenvalue with a single Jordan block, H_gamma is diagonal
    let j = phi_inv(&NormalFormLabel::J.field(P2)).unwrap();
    let repeated = |m: &Matrix| {
        let ev: Vec<Scalar> = (0..3).map(|i| m.get(i, i).clone()).collect();
        ev.iter().find(|l| ev.iter().filter(|k| k == l).count() > 1).cloned()
    };
    let shifted = |m: &Matrix, l: &Scalar| (m - &Matrix::identity(3).scale(l)).rank();
    let l = repeated(j.matrix()).expect("J repeats an eigenvalue");
    assert_eq!(shifted(j.matrix(), &l), 2);
    for g in [int(1), int(2), Scalar::from_ratio(-1, 2)] {
        let h = phi_inv(&NormalFormLabel::Hgamma(g).field(P2)).unwrap();
        let m = h.matrix();
        let off_diagonal = (0..3).all(|i| (0..3).all(|k| i == k || m.get(i, k).is_zero()));
        assert!(off_diagonal);
    }
}

// Lie structure

fn random_invertible(r: &mut impl Rng, n: usize) -> Vec<Vec<Scalar>> {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| int(r.gen_range(-2..=2))).collect()).collect();
        if !Matrix::from_rows(rows.clone()).det().is_zero() {
            return rows;
        }
    }
}

fn concrete_algebras() -> Vec<Vec<VectorField>> {
    let f = |px: &[(i64, usize, usize)], py: &[(i64, usize, usize)]| VectorField::from_terms(S, px, py);
    vec![
        g0_basis(),
        gn_basis(1).into_iter().map(|x| x.on(S)).collect(),
        vec![VectorField::d_x(S), VectorField::d_y(S), f(&[], &[(1, 1, 0)])],
        vec![VectorField::d_x(S), f(&[(1, 1, 0)], &[]), VectorField::d_y(S)],
        vec![VectorField::d_y(S), f(&[], &[(1, 0, 1)]), f(&[], &[(1, 1, 0)])],
        vec![VectorField::d_x(S), VectorField::d_y(S), f(&[(1, 1, 0)], &[(1, 0, 1)])],
        vec![VectorField::d_x(S), f(&[(1, 1, 0)], &[])],
        vec![VectorField::d_x(S), VectorField::d_y(S)],
        vec![VectorField::d_y(S), f(&[], &[(1, 0, 1)])],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn killing_agrees_with_derived_series(k in 0usize..9, s in seed()) {
        let mut r = rng(s);
        let basis = &concrete_algebras()[k];
        let p = random_invertible(&mut r, basis.len());
        let f = random_affine(&mut r);
        let mixed: Vec<VectorField> =
            p.iter().map(|row| pullback(&VectorField::combination(row, basis), &f).unwrap()).collect();
        let a = structure_constants(&mixed).unwrap();
        let rep = killing_report(&a).unwrap();
        prop_assert_eq!(rep.is_solvable, is_solvable_by_series(&derived_series(&a)));
    }

    #[test]
    fn abstract_two_dim_algebras(a in -3i64..=3, b in -3i64..=3) {
        let z = Scalar::zero();
        let e = [int(a), int(b)];
        let neg = [-&e[0], -&e[1]];
        let constants = vec![
            vec![vec![z.clone(), z.clone()], e.to_vec()],
            vec![neg.to_vec(), vec![z.clone(), z]],
        ];
        let alg = AlgebraPresentation::from_constants(constants).unwrap();
        let rep = killing_report(&alg).unwrap();
        prop_assert!(rep.is_solvable && is_solvable_by_series(&derived_series(&alg)));
    }

    #[test]
    fn sl2_completions_verify(n in 1u32..5, c2 in 0i64..=3) {
        let dy = VectorField::d_y(S);
        let lambda = Scalar::from_ratio(2, n as i64);
        let y = VectorField::new(S, BiRat::x().scale(&lambda.inv()), BiRat::y());
        match sl2_complete_with(&dy, &y, &int(c2)).unwrap() {
            Sl2Verdict::Completed { z, model, witness } => {
                prop_assert!(verify_sl2_triple(&dy, &y, &z).unwrap());
                let pulled: Vec<VectorField> = [&dy, &y, &z].iter().map(|v| pullback(v, &witness).unwrap()).collect();
                let basis: Vec<VectorField> = model.basis().iter().map(|b| b.on(pulled[0].surface)).collect();
                prop_assert!(spans_equal(&pulled, &basis), "{} via {}", model, witness);
                if model != Sl2Model::G4Tilde {
                    prop_assert_eq!(pulled, basis);
                }
            }
            Sl2Verdict::Impossible(why) => prop_assert!(c2 != 0, "{}", why),
        }
    }

    #[test]
    fn two_dim_models_are_fixed(p in prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4]), q in 1i64..=3, n in 1u32..5) {
        let labels = [
            TwoDimLabel::A00,
            TwoDimLabel::A01,
            TwoDimLabel::A11,
            TwoDimLabel::Cgamma(Scalar::from_ratio(p, q)),
            TwoDimLabel::D,
            TwoDimLabel::Fn(n),
            TwoDimLabel::CollinearAffine,
        ];
        for l in labels {
            let [a, b] = l.model_pair(S);
            let c = classify_2dim(&a, &b).unwrap();
            prop_assert_eq!(&c.label, &l);
            prop_assert!(c.verify().unwrap());
            let again = classify_2dim(&c.pulled[0], &c.pulled[1]).unwrap();
            prop_assert_eq!(&again.label, &l);
            prop_assert!(again.map.is_identity(), "{}: {}", l, again.map);
        }
    }
}

#[test]
fn builtin_tensors_are_lie_algebras() {
    let names = CatalogName::FIXED
        .into_iter()
        .chain((0..6).map(CatalogName::Bn))
        .chain((0..4).map(CatalogName::AutFn))
        .chain((1..5).map(CatalogName::Gn));
    for n in names {
        let a = builtin_catalog(n).unwrap();
        assert!(a.is_antisymmetric() && a.satisfies_jacobi(), "{}", n);
        let rep = killing_report(&a).unwrap();
        assert_eq!(rep.is_solvable, is_solvable_by_series(&derived_series(&a)), "{}", n);
    }
}

#[test]
fn g4tilde_preserves_its_conic() {
    assert!(g4tilde_basis().iter().all(preserves_conic));
}

#[test]
fn borel_abelianization_has_dimension_two() {
    for n in 0..8 {
        let dims: Vec<usize> = derived_series(&builtin_catalog(CatalogName::Bn(n)).unwrap()).iter().map(|t| t.dim).collect();
        assert_eq!(dims[0] - dims[1], 2, "B{}", n);
    }
}
