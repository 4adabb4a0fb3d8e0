mod common;

use bezout_core::bezout::{expected_euler, local_degrees};
use bezout_core::field::{first_irreducible, FiniteField};
use bezout_core::geometry::{chart_coordinates, HomogeneousPoly};
use bezout_core::gw::{discriminant, invariants, signature, trace_form, trace_gram, Disc, GwClassify};
use bezout_core::intersect::CurvePair;
use bezout_core::linalg::determinant;
use bezout_core::localdeg::{
    a_n_recursive, local_degree_monomial, local_degree_series, local_degree_transverse, ss_hankel_oracle,
};
use bezout_core::poly::{MPoly, UPoly};
use bezout_core::series::{compose_bivariate, hensel_series_root, TruncatedSeries};
use bezout_core::{gw_equal, ExtensionField, Field, GwElement, PrimeField, Rational, Rationals};
use common::{naive_composition, q, VARS};
use num_traits::Zero;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 101]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn unit<F: Field>(field: &F, a: &F::Elem) -> GwElement<F> {
    GwElement::unit(field, a.clone()).unwrap()
}

fn relations<F: GwClassify>(field: &F, a: &F::Elem, b: &F::Elem) {
    let ab = field.mul(a, b);
    assert!(gw_equal(&unit(field, &field.mul(&ab, b)), &unit(field, a)).unwrap());
    assert!(gw_equal(&unit(field, a).mul(&unit(field, b)).unwrap(), &unit(field, &ab)).unwrap());
    let s = field.add(a, b);
    if !field.is_zero(&s) {
        let lhs = unit(field, a).add(&unit(field, b)).unwrap();
        let rhs = unit(field, &s).add(&unit(field, &field.mul(&ab, &s))).unwrap();
        assert!(gw_equal(&lhs, &rhs).unwrap());
    }
    let h = unit(field, a).add(&unit(field, &field.neg(a))).unwrap();
    assert!(gw_equal(&h, &GwElement::hyperbolic(field)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gw_relations_over_q(a in rat(), b in rat()) {
        relations(&Rationals, &a, &b);
    }

    #[test]
    fn gw_relations_over_fp(field in prime(), a in 1u64..1000, b in 1u64..1000) {
        let (a, b) = (field.elem(a as i64), field.elem(b as i64));
        prop_assume!(a != 0 && b != 0);
        relations(&field, &a, &b);
    }

    #[test]
    fn invariants_are_additive(xs in prop::collection::vec(rat(), 1..5), ys in prop::collection::vec(rat(), 1..5)) {
        let x = GwElement::new(&Rationals, xs).unwrap();
        let y = GwElement::new(&Rationals, ys).unwrap();
        let (ix, iy) = (invariants(&x).unwrap(), invariants(&y).unwrap());
        let s = invariants(&x.add(&y).unwrap()).unwrap();
        prop_assert_eq!(s.rank, ix.rank + iy.rank);
        prop_assert_eq!(s.signature.unwrap(), ix.signature.unwrap() + iy.signature.unwrap());
        let (Disc::Integer(dx), Disc::Integer(dy), Disc::Integer(ds)) = (ix.disc, iy.disc, s.disc) else {
            panic!("discriminants over Q are integers")
        };
        // square classes multiply
        let prod = GwElement::unit(&Rationals, Rational::from_integer(dx * dy)).unwrap();
        prop_assert_eq!(discriminant(&prod).unwrap(), Disc::Integer(ds));
    }

    #[test]
    fn signature_bounded_by_rank(xs in prop::collection::vec(rat(), 1..8)) {
        let x = GwElement::new(&Rationals, xs).unwrap();
        prop_assert!(signature(&x).unwrap().unsigned_abs() as usize <= x.rank());
    }

    #[test]
    fn trace_form_disc_over_q(d in prop::sample::select(vec![-7i64, -3, -1, 2, 3, 5, 6, 10]), deg in 2usize..=3,
                              c in prop::collection::vec(-9i64..=9, 3)) {
        let mut coeffs = vec![0i64; deg + 1];
        coeffs[0] = -d;
        coeffs[deg] = 1;
        // a^3 + 1 is reducible
        let e = ExtensionField::new(UPoly::from_i64s(&Rationals, &coeffs));
        prop_assume!(e.is_ok());
        let e = e.unwrap();
        let beta = e.elem(c[..deg].iter().map(|&v| q(v)).collect()).unwrap();
        prop_assume!(!e.is_zero(&beta));
        let lhs = discriminant(&trace_form(&e, &beta).unwrap()).unwrap();
        let d1 = determinant(&Rationals, trace_gram(&e, &e.one()));
        let rhs = discriminant(&unit(&Rationals, &(e.norm(&beta) * d1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_form_disc_over_fp(field in prime(), b in 1usize..=3, c in prop::collection::vec(0u64..1000, 3)) {
        let e = ExtensionField::new(first_irreducible(&field, b)).unwrap();
        let beta = e.elem(c[..b].iter().map(|&v| field.elem(v as i64)).collect()).unwrap();
        prop_assume!(!e.is_zero(&beta));
        let lhs = discriminant(&trace_form(&e, &beta).unwrap()).unwrap();
        let d1 = determinant(&field, trace_gram(&e, &e.one()));
        let rhs = Disc::Square(field.is_square(&field.mul(&e.norm(&beta), &d1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hankel_matches_closed_form(a in rat(), d in 1usize..=12) {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = a.clone();
        let s = TruncatedSeries::new(&Rationals, coeffs, d + 1);
        let h = ss_hankel_oracle(&s).unwrap();
        prop_assert!(gw_equal(&h, &local_degree_monomial(&Rationals, &a, d).unwrap()).unwrap());
    }

    #[test]
    fn a_n_matches_composition(
        f in prop::collection::vec((0u32..=4, 0u32..=4, -5i64..=5), 0..10),
        g in prop::collection::vec((0u32..=4, 0u32..=4, -5i64..=5), 0..10),
        gy in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
    ) {
        let xy = ["x", "y"];
        let terms = |t: &[(u32, u32, i64)]| {
            MPoly::from_terms(&Rationals, &xy, t.iter().filter(|(i, j, _)| i + j > 0).map(|&(i, j, c)| (vec![i, j], q(c))))
        };
        let f = terms(&f);
        let mut g = terms(&g);
        let c01 = g.coeff(&[0, 1]);
        g.add_term(vec![0, 1], q(gy) - c01);
        let n = 8;
        let root = hensel_series_root(&g, n).unwrap();
        let naive = naive_composition(&f, root.coeffs(), n);
        let composed = compose_bivariate(&f, &root);
        for k in 0..=n {
            prop_assert_eq!(&a_n_recursive(&f, &root, k).unwrap(), &naive[k]);
            prop_assert_eq!(&composed.coeff(k), &naive[k]);
        }
    }

    #[test]
    fn scaling_covariance(a in rat(), k in 1u32..=7, c in rat(), h in prop::collection::vec((0u32..=3, 0u32..=3, -4i64..=4), 0..6)) {
        let xy = ["x", "y"];
        let f = MPoly::from_terms(&Rationals, &xy, [(vec![0, 1], q(1)), (vec![k, 0], c)]);
        let higher = MPoly::from_terms(&Rationals, &xy, h.iter().map(|&(i, j, v)| (vec![i + 1, j], q(v))));
        let g = MPoly::from_terms(&Rationals, &xy, [(vec![0, 1], q(1))]).add(&higher);
        let base = local_degree_series(&f, &g);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let scaled = local_degree_series(&f.scale(&a), &g).unwrap();
        prop_assert!(gw_equal(&scaled.degree, &base.degree.scale(&a).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_identity_and_chart_independence_over_fp(
        field in prime(),
        f in prop::collection::vec(0u64..101, 3),
        g in prop::collection::vec(0u64..101, 6),
    ) {
        let form = |d: u32, c: &[u64]| {
            let mut p = MPoly::zero(&field, &VARS);
            for (m, v) in common::monomials(d).into_iter().zip(c) {
                p.add_term(m, field.elem(*v as i64));
            }
            HomogeneousPoly::with_degree(p, d)
        };
        let (Ok(f), Ok(g)) = (form(1, &f), form(2, &g)) else { return Ok(()) };
        let Ok(pair) = CurvePair::new(f, g) else { return Ok(()) };
        let Ok(points) = local_degrees(&pair, 0) else { return Ok(()) };
        let rank: usize = points.iter().map(|p| p.local.degree.rank()).sum();
        prop_assert_eq!(rank, 2);
        if points.iter().all(|p| p.point.transverse) {
            let total = GwElement::sum(&field, points.iter().map(|p| &p.local.degree)).unwrap();
            prop_assert!(gw_equal(&total, &expected_euler(&field, &[1, 2]).unwrap()).unwrap());
        }
        for pd in points.iter().filter(|p| p.point.transverse) {
            let ext = &pd.point.residue_field;
            let mut degrees = Vec::new();
            for chart in (0..3).filter(|&c| !ext.is_zero(&pd.point.projective[c])) {
                let coords = chart_coordinates(ext, &pd.point.projective, chart).unwrap();
                degrees.push(local_degree_transverse(&pair.chart_polys(chart).unwrap(), ext, &coords).unwrap().degree);
            }
            for d in &degrees[1..] {
                prop_assert!(gw_equal(&degrees[0], d).unwrap());
            }
        }
    }
}

#[test]
fn finite_field_enumeration_counts() {
    let f = PrimeField::new(5).unwrap();
    let e = ExtensionField::new(first_irreducible(&f, 2)).unwrap();
    assert_eq!(e.elements().len(), 25);
}
