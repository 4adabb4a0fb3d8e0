//! Factorization over finite fields: squarefree, distinct-degree and
//! Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;

use super::{Factorization, UPoly};
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Squarefree decomposition: pairs (g_i, i) with f = lc * prod g_i^i, g_i monic squarefree.
pub fn squarefree_decomposition_fq<F: FiniteField>(f: &UPoly<F>) -> Vec<(UPoly<F>, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut mult = 1usize;
    loop {
        if f.degree().unwrap_or(0) == 0 {
            break;
        }
        let df = f.derivative();
        if df.is_zero() {
            // f = g(x^p) with g built from p-th roots of the coefficients
            f = pth_root_poly(&f, p);
            mult *= p;
            continue;
        }
        let mut c = UPoly::gcd(&f, &df);
        let mut w = f.div_exact(&c).expect("gcd divides");
        let mut i = 1usize;
        while w.degree().unwrap_or(0) > 0 {
            let y = UPoly::gcd(&w, &c);
            let z = w.div_exact(&y).expect("gcd divides");
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w).expect("gcd divides");
        }
        if c.degree().unwrap_or(0) == 0 {
            break;
        }
        f = pth_root_poly(&c, p);
        mult *= p;
    }
    merge_multiplicities(out)
}

fn merge_multiplicities<F: FiniteField>(mut v: Vec<(UPoly<F>, usize)>) -> Vec<(UPoly<F>, usize)> {
    v.sort_by_key(|(_, m)| *m);
    let mut out: Vec<(UPoly<F>, usize)> = Vec::new();
    for (g, m) in v {
        match out.last_mut() {
            Some((h, k)) if *k == m => *h = h.mul(&g),
            _ => out.push((g, m)),
        }
    }
    out
}

fn pth_root_poly<F: FiniteField>(f: &UPoly<F>, p: usize) -> UPoly<F> {
    let field = f.field();
    let deg = f.degree().unwrap_or(0);
    let coeffs = (0..=deg / p).map(|i| field.pth_root(&f.coeff(i * p))).collect();
    UPoly::new(field, coeffs)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree<F: FiniteField>(f: &UPoly<F>) -> Vec<(UPoly<F>, usize)> {
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let x = UPoly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = UPoly::gcd(&h.sub(&x), &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of equal degree `d`.
pub fn equal_degree<F: FiniteField>(f: &UPoly<F>, d: usize, rng: &mut dyn RngCore) -> Vec<UPoly<F>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let e = (q.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = UPoly::new(&field, (0..n).map(|_| field.random_elem(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = UPoly::gcd(&a, f);
        let split = if g.degree().unwrap_or(0) > 0 {
            g
        } else {
            let b = a.pow_mod(&e, f).sub(&UPoly::one(&field));
            UPoly::gcd(&b, f)
        };
        let k = split.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = f.div_exact(&split).expect("gcd divides");
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Complete factorization over a finite field of odd characteristic.
pub fn factor_fq<F: FiniteField>(f: &UPoly<F>, rng: &mut dyn RngCore) -> Result<Factorization<F>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor".into()));
    }
    let field = f.field().clone();
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition_fq(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                factors.push((irr, m));
            }
        }
    }
    Ok(Factorization::new(field.clone(), f.lc(), factors))
}
