//! Factorization over Q by the Zassenhaus method.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor_fq::factor_fq;
use super::{Factorization, UPoly};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rational, Rationals};

type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zscale(a: &ZPoly, c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Symmetric residues in (-m/2, m/2].
fn zsym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial, coefficients reduced mod m.
fn zdivrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = d.len() - 1;
    let mut rem = zmod(a, m);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * dc).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

/// Exact division over Z; None if `d` does not divide `a`.
fn zdiv_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    let lc = d.last().expect("nonzero divisor");
    let mut rem = a.clone();
    if rem.len() < d.len() {
        return rem.is_empty().then(Vec::new);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let (c, r) = rem[k + dd].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    trim(rem).is_empty().then(|| trim(quot))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

fn to_fp(a: &ZPoly, f: &PrimeField) -> UPoly<PrimeField> {
    UPoly::new(f, a.iter().map(|x| f.from_bigint(x)).collect())
}

fn from_fp(a: &UPoly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Inverse of `a` modulo `m` (gcd must be 1).
fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from f = g*h mod m, s*g + t*h = 1 mod m (h monic)
/// to the same relations mod m^2.
fn hensel_step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(g, &zadd(&zmul(t, &e), &zmul(&q, g))), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts the monic modular factors of `f` (lc(f) a unit mod p) to monic
/// factors modulo p^(2^k) >= `bound`. Returns the lifted factors and the modulus.
fn multifactor_lift(f: &ZPoly, factors: &[UPoly<PrimeField>], fp: &PrimeField, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let p = BigInt::from(fp.modulus());
    let mut modulus = p.clone();
    while &modulus < bound {
        modulus = &modulus * &modulus;
    }
    let mut out = Vec::new();
    // current is lifted mod `modulus`; remaining factors are mod p
    let mut current = zmod(f, &modulus);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            let lc = current.last().cloned().unwrap_or_else(BigInt::one);
            let inv = inv_mod(&lc, &modulus);
            out.push(zmod(&zscale(&current, &inv), &modulus));
            break;
        }
        let rest = factors[i + 1..]
            .iter()
            .fold(UPoly::one(fp), |acc, u| acc.mul(u));
        let cur_p = to_fp(&current, fp);
        let lc_p = cur_p.lc();
        let g0 = factors[i].scale(&lc_p);
        let (one, s0, t0) = UPoly::xgcd(&g0, &rest);
        debug_assert_eq!(one.degree(), Some(0));
        let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&rest), from_fp(&s0), from_fp(&t0));
        let mut m = p.clone();
        while m < modulus {
            let (g1, h1, s1, t1) = hensel_step(&zmod(&current, &(&m * &m)), &g, &h, &s, &t, &m);
            g = g1;
            h = h1;
            s = s1;
            t = t1;
            m = &m * &m;
        }
        let g = zmod(&g, &modulus);
        let lc = g.last().cloned().unwrap_or_else(BigInt::one);
        let inv = inv_mod(&lc, &modulus);
        out.push(zmod(&zscale(&g, &inv), &modulus));
        current = zmod(&h, &modulus);
    }
    (out, modulus)
}

fn norm_inf(a: &ZPoly) -> BigInt {
    a.iter().map(|x| x.abs()).max().unwrap_or_default()
}

/// Factors a primitive squarefree integer polynomial of positive degree
/// with positive leading coefficient into primitive irreducibles.
fn zassenhaus(f: &ZPoly, seed: u64) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.last().expect("nonzero").clone();
    let df: ZPoly = trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect());
    let mut p = 3u64;
    let fp = loop {
        if is_prime_u64(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = PrimeField::new(p)?;
            let g = UPoly::gcd(&to_fp(f, &fp), &to_fp(&df, &fp));
            if g.degree() == Some(0) {
                break fp;
            }
        }
        p += 2;
        if p > 100_000 {
            return Err(Error::Internal("no good prime for Zassenhaus".into()));
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modular = factor_fq(&to_fp(f, &fp), &mut rng)?;
    let mods: Vec<UPoly<PrimeField>> = modular.factors.into_iter().map(|(g, _)| g).collect();
    if mods.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Mignotte: any factor's coefficients are below 2^n * sqrt(n+1) * |f|_inf * |lc|
    let sqrt_bound = BigInt::from(((n + 1) as u64).sqrt() + 1);
    let bound = (BigInt::one() << n) * sqrt_bound * norm_inf(f) * lc.abs() * 2 + 1;
    let (lifted, modulus) = multifactor_lift(f, &mods, &fp, &bound);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut f_cur = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let lc_cur = f_cur.last().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![lc_cur.clone()], |acc, &i| zmod(&zmul(&acc, &remaining[i]), &modulus));
            let cand = primitive(&zsym(&prod, &modulus));
            if let Some(q) = zdiv_exact(&f_cur, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f_cur = primitive(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(primitive(&f_cur));
    Ok(found)
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Yun's squarefree decomposition in characteristic zero.
pub fn squarefree_decomposition_char0<F: Field>(f: &UPoly<F>) -> Vec<(UPoly<F>, usize)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = UPoly::gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = UPoly::gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Integer primitive part of a rational polynomial, with positive leading coefficient.
fn to_primitive_z(f: &UPoly<Rationals>) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = f.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    primitive(&z)
}

/// Factors a nonzero polynomial over Q into monic irreducibles.
pub fn factor_rational_seeded(f: &UPoly<Rationals>, seed: u64) -> Result<Factorization<Rationals>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor".into()));
    }
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition_char0(f) {
        for h in zassenhaus(&to_primitive_z(&g), seed)? {
            let q = UPoly::new(&Rationals, h.into_iter().map(Rational::from_integer).collect());
            factors.push((q.monic(), m));
        }
    }
    Ok(Factorization::new(Rationals, f.lc(), factors))
}

pub fn factor_rational(f: &UPoly<Rationals>) -> Result<Factorization<Rationals>> {
    factor_rational_seeded(f, 0)
}

/// Rational roots of a nonzero polynomial, from its linear factors.
pub fn rational_roots(f: &UPoly<Rationals>) -> Result<Vec<Rational>> {
    Ok(factor_rational(f)?
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| -g.coeff(0))
        .collect())
}
