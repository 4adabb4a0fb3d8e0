//! Instance generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use bezout_core::bezout::{local_degrees, PointDegree};
use bezout_core::field::{first_irreducible, FiniteField};
use bezout_core::geometry::HomogeneousPoly;
use bezout_core::intersect::{CurvePair, IntersectionPoint};
use bezout_core::poly::{MPoly, UPoly};
use bezout_core::{ExtensionField, Field, PrimeField, Rational, Rationals};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 3] = ["x0", "x1", "x2"];

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponent vectors of total degree d in three variables.
pub fn monomials(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

/// Dense homogeneous form of degree d with coefficients in [-c, c].
pub fn random_form<F: Field>(field: &F, rng: &mut ChaCha8Rng, d: u32, c: i64) -> MPoly<F> {
    loop {
        let mut p = MPoly::zero(field, &VARS);
        for m in monomials(d) {
            p.add_term(m, field.from_i64(rng.gen_range(-c..=c)));
        }
        if p.total_degree() == Some(d) {
            return p;
        }
    }
}

/// Product of random lines and conics of total degree d.
pub fn random_split_curve(rng: &mut ChaCha8Rng, d: u32) -> HomogeneousPoly<Rationals> {
    let mut left = d;
    let mut p = MPoly::zero(&Rationals, &VARS).constant_like(q(1));
    while left > 0 {
        let part = if left >= 2 && rng.gen_bool(0.5) { 2 } else { 1 };
        p = p.mul(&random_form(&Rationals, rng, part, 3));
        left -= part;
    }
    HomogeneousPoly::new(p).expect("product of forms is homogeneous")
}

/// Suite-2 instances: transverse pairs over Q built from lines and conics.
pub fn transverse_pair_q(rng: &mut ChaCha8Rng, df: u32, dg: u32) -> (CurvePair<Rationals>, Vec<PointDegree<Rationals>>) {
    loop {
        let pair = CurvePair::new(random_split_curve(rng, df), random_split_curve(rng, dg)).unwrap();
        if let Ok(points) = local_degrees(&pair, 0) {
            if points.iter().all(|p| p.point.transverse) {
                return (pair, points);
            }
        }
    }
}

/// Dense random transverse pairs over F_p.
pub fn transverse_pair_fp(
    rng: &mut ChaCha8Rng,
    field: &PrimeField,
    df: u32,
    dg: u32,
) -> (CurvePair<PrimeField>, Vec<PointDegree<PrimeField>>) {
    let p = field.modulus() as i64;
    loop {
        let f = HomogeneousPoly::new(random_form(field, rng, df, p)).unwrap();
        let g = HomogeneousPoly::new(random_form(field, rng, dg, p)).unwrap();
        let pair = CurvePair::new(f, g).unwrap();
        if let Ok(points) = local_degrees(&pair, 0) {
            if points.iter().all(|p| p.point.transverse) {
                return (pair, points);
            }
        }
    }
}

type Fqb = ExtensionField<PrimeField>;

/// Normalized projective point over F_{p^b}: first nonzero coordinate is 1.
fn normalize(e: &Fqb, x: &[<Fqb as Field>::Elem]) -> Vec<Vec<u64>> {
    let i = x.iter().position(|c| !e.is_zero(c)).expect("nonzero point");
    let inv = e.inv(&x[i]).unwrap();
    x.iter().map(|c| e.mul(c, &inv).coeffs().to_vec()).collect()
}

/// F_{p^b}-points of F = G = 0 by exhaustive search: affine x in F_{p^b},
/// roots of gcd(F(1, x, y), G(1, x, y)), then the line x0 = 0.
pub fn brute_force_points(pair: &CurvePair<PrimeField>, b: usize) -> BTreeSet<Vec<Vec<u64>>> {
    let base = *pair.field();
    let e = ExtensionField::new(first_irreducible(&base, b)).unwrap();
    let elems = e.elements();
    let lift = |h: &MPoly<PrimeField>| h.map_coeffs(&e, |c| e.embed(c));
    let (f, g) = (lift(pair.f.poly()), lift(pair.g.poly()));
    let mut out = BTreeSet::new();
    let (zero, one) = (e.zero(), e.one());
    // univariate in the last coordinate after fixing the first two
    let fibre = |x0: &<Fqb as Field>::Elem, x1: &<Fqb as Field>::Elem| -> UPoly<Fqb> {
        let restrict = |h: &MPoly<Fqb>| {
            let coeffs: Vec<_> =
                h.coefficients_in(2).iter().map(|c| c.eval(&[x0.clone(), x1.clone(), zero.clone()])).collect();
            UPoly::new(&e, coeffs)
        };
        UPoly::gcd(&restrict(&f), &restrict(&g))
    };
    let mut candidates: Vec<(<Fqb as Field>::Elem, <Fqb as Field>::Elem)> =
        elems.iter().map(|x| (one.clone(), x.clone())).collect();
    candidates.push((zero.clone(), one.clone()));
    for (x0, x1) in candidates {
        let h = fibre(&x0, &x1);
        if h.is_zero() {
            // the whole line lies on both curves: not expected for coprime pairs
            panic!("common component");
        }
        if h.degree() == Some(0) {
            continue;
        }
        for y in &elems {
            if e.is_zero(&h.eval(y)) {
                out.insert(normalize(&e, &[x0.clone(), x1.clone(), y.clone()]));
            }
        }
    }
    let top = [zero.clone(), zero.clone(), one.clone()];
    if e.is_zero(&f.eval(&top)) && e.is_zero(&g.eval(&top)) {
        out.insert(normalize(&e, &top));
    }
    out
}

/// The F_{p^b}-points obtained from the closed points with [k(p):k] | b.
pub fn points_over_extension(points: &[IntersectionPoint<PrimeField>], b: usize) -> BTreeSet<Vec<Vec<u64>>> {
    let base = *points[0].residue_field.base();
    let e = ExtensionField::new(first_irreducible(&base, b)).unwrap();
    let elems = e.elements();
    let mut out = BTreeSet::new();
    for p in points {
        let k = &p.residue_field;
        if b % k.degree() != 0 {
            continue;
        }
        let m = k.minimal_poly().map(&e, |c| e.embed(c));
        for r in elems.iter().filter(|r| e.is_zero(&m.eval(r))) {
            let x: Vec<_> = p.projective.iter().map(|c| k.to_poly(c).map(&e, |a| e.embed(a)).eval(r)).collect();
            out.insert(normalize(&e, &x));
        }
    }
    out
}

/// Nonzero integer in [-c, c].
pub fn nonzero(rng: &mut ChaCha8Rng, c: i64) -> i64 {
    loop {
        let v = rng.gen_range(-c..=c);
        if v != 0 {
            return v;
        }
    }
}

/// Line through the affine points (1 : a1 : b1) and (1 : a2 : b2).
pub fn line_through(p1: (i64, i64), p2: (i64, i64)) -> MPoly<Rationals> {
    let (a1, b1) = p1;
    let (a2, b2) = p2;
    // cofactor expansion of det [[x0, x1, x2], [1, a1, b1], [1, a2, b2]]
    MPoly::from_i64_terms(
        &Rationals,
        &VARS,
        &[(a1 * b2 - a2 * b1, &[1, 0, 0]), (b1 - b2, &[0, 1, 0]), (a2 - a1, &[0, 0, 1])],
    )
}

/// A line L and a conic C = L M + N1 N2 meeting exactly at two given
/// integer points, with N_i a line through P_i. Returns the pair and the points.
pub fn line_conic(rng: &mut ChaCha8Rng) -> (CurvePair<Rationals>, (i64, i64), (i64, i64)) {
    let pt = |rng: &mut ChaCha8Rng| (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    loop {
        let (p1, p2) = (pt(rng), pt(rng));
        if p1 == p2 {
            continue;
        }
        let (r1, r2) = (pt(rng), pt(rng));
        if r1 == p1 || r2 == p2 {
            continue;
        }
        let l = line_through(p1, p2);
        let m = random_form(&Rationals, rng, 1, 3);
        let c = l.mul(&m).add(&line_through(p1, r1).mul(&line_through(p2, r2)));
        let (Ok(lh), Ok(ch)) = (HomogeneousPoly::new(l), HomogeneousPoly::with_degree(c, 2)) else { continue };
        let Ok(pair) = CurvePair::new(lh, ch) else { continue };
        return (pair, p1, p2);
    }
}

/// Coefficients of f(x, G(x)) up to x^n by plain truncated polynomial
/// arithmetic, for bivariate f in variables (x, y).
pub fn naive_composition(f: &MPoly<Rationals>, g: &[Rational], n: usize) -> Vec<Rational> {
    let gp = UPoly::new(&Rationals, g.to_vec());
    let trunc = |p: UPoly<Rationals>| {
        let mut c = p.coeffs().to_vec();
        c.truncate(n + 1);
        UPoly::new(&Rationals, c)
    };
    let mut out = UPoly::zero(&Rationals);
    for (m, c) in f.terms() {
        let mut t = UPoly::monomial(&Rationals, c.clone(), m[0] as usize);
        for _ in 0..m[1] {
            t = trunc(t.mul(&gp));
        }
        out = out.add(&trunc(t));
    }
    (0..=n).map(|i| out.coeff(i)).collect()
}
