use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::RngCore;

use super::{rabin_irreducible, CheckIrreducible, Field, FieldTag, FiniteField, Rational};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::poly::UPoly;

/// The prime field F_p for an odd prime p < 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("reduced below p")
    }

    /// Smallest positive quadratic non-residue.
    pub fn least_nonresidue(&self) -> u64 {
        (2..self.p)
            .find(|&a| !self.is_square(&a))
            .expect("odd prime field has non-residues")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            return None;
        }
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.p));
        Some(self.reduce_bigint(&e.x))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Fp { p: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pow_u64(&self, a: &u64, mut exp: u64) -> u64 {
        let mut base = *a;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl FiniteField for PrimeField {
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
    fn is_square(&self, a: &u64) -> bool {
        *a == 0 || self.pow_u64(a, (self.p - 1) / 2) == 1
    }
}

impl CheckIrreducible for PrimeField {
    fn is_irreducible(&self, p: &UPoly<Self>) -> Result<bool> {
        Ok(rabin_irreducible(p, &BigUint::from(self.p)))
    }
}
