//! Integer arithmetic: primality, factorization, square classes.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 10_000;
const CACHE_LIMIT: usize = 1 << 16;
/// Pollard–Brent iterations allowed per composite cofactor.
const RHO_BUDGET: u64 = 2_000_000;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    if BASES.iter().any(|&b| (n % b).is_zero()) {
        return false;
    }
    'witness: for a in BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let m = 128u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut steps = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            steps += m;
            if steps > RHO_BUDGET {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn from_u128_factors(n: u128, out: &mut Vec<BigUint>) {
    for (p, e) in num_prime::nt_funcs::factorize128(n) {
        out.extend(std::iter::repeat(BigUint::from(p)).take(e));
    }
}

fn split_composite(n: BigUint, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(small) = n.to_u128() {
        from_u128_factors(small, out);
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_composite(r.clone(), out)?;
        return split_composite(r, out);
    }
    for c in 1..=8u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let e = &n / &d;
            split_composite(d, out)?;
            return split_composite(e, out);
        }
    }
    Err(Error::FactorizationBudget(n.to_string()))
}

fn factor_cache() -> &'static Mutex<HashMap<BigUint, Vec<(BigUint, u32)>>> {
    static CACHE: OnceLock<Mutex<HashMap<BigUint, Vec<(BigUint, u32)>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Prime factorization of `n > 0` as sorted (prime, exponent) pairs.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factor_integer".into()));
    }
    if let Some(hit) = factor_cache().lock().expect("cache lock").get(n) {
        return Ok(hit.clone());
    }
    let mut primes: Vec<BigUint> = Vec::new();
    if let Some(small) = n.to_u128() {
        from_u128_factors(small, &mut primes);
    } else {
        let mut m = n.clone();
        let mut d = 2u64;
        while d <= TRIAL_LIMIT {
            if BigUint::from(d * d) > m {
                break;
            }
            while (&m % d).is_zero() {
                primes.push(BigUint::from(d));
                m /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if !m.is_one() {
            if BigUint::from(d) * BigUint::from(d) > m {
                primes.push(m);
            } else {
                split_composite(m, &mut primes)?;
            }
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    let mut cache = factor_cache().lock().expect("cache lock");
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(n.clone(), out.clone());
    Ok(out)
}

/// Squarefree integer in the square class of a nonzero rational num/den.
pub fn squarefree_part(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::ZeroInput("squarefree_part".into()));
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    // num/den and num*den share a square class
    let mut reduced = BigUint::one();
    for (p, e) in factor_integer(&(num.magnitude() * den.magnitude()))? {
        if e % 2 == 1 {
            reduced *= p;
        }
    }
    let v = BigInt::from(reduced);
    Ok(if negative { -v } else { v })
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut m = n.abs();
    let p = BigInt::from(p);
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Residue of `n` in [0, p).
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Legendre symbol (a/p) in {-1, 0, 1} for odd prime p.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn pow_mod_u64(a: u64, e: u64, m: u64) -> u64 {
    powmod(a, e, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn factor_beyond_trial_division() {
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let n = &p * &q * &p;
        assert_eq!(factor_integer(&n).unwrap(), vec![(p, 2), (q, 1)]);
        assert_eq!(factor_integer(&BigUint::from(360u32)).unwrap().len(), 3);
    }

    #[test]
    fn square_classes() {
        assert_eq!(squarefree_part(&big(18), &big(1)).unwrap(), big(2));
        assert_eq!(squarefree_part(&big(-8), &big(3)).unwrap(), big(-6));
        assert_eq!(squarefree_part(&big(3), &big(12)).unwrap(), big(1));
        assert!(squarefree_part(&big(0), &big(1)).is_err());
    }

    #[test]
    fn valuations_and_residues() {
        assert_eq!(valuation(&big(-40), 2), 3);
        assert_eq!(valuation(&big(10), 7), 0);
        assert_eq!(mod_u64(&big(-1), 5), 4);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(4, 5), 1);
    }
}
