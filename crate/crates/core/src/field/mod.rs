//! Exact coefficient fields.
//!
//! Arithmetic is routed through a field *context* value (`F: Field`) rather
//! than through operator traits on the elements, because the fields used here
//! carry runtime parameters: the modulus of a prime field, the minimal
//! polynomial of an extension. Contexts are cheap to clone.

mod extension;
mod prime;
mod ratfunc;
mod rational;

pub use extension::{first_irreducible, ExtElem, ExtensionField};
pub use prime::PrimeField;
pub use ratfunc::{lowest_coefficient, RationalFunction, RationalFunctions};
pub use rational::{rational_sign, Rational, Rationals};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::UPoly;

/// Identifies the field a value lives over; used in reports and JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum FieldTag {
    Q,
    Fp { p: u64 },
    /// The symbolic model of the Laurent series field C((t)).
    Ct,
    Ext { base: Box<FieldTag>, min_poly: String },
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp { p } => write!(f, "Fp:{p}"),
            FieldTag::Ct => write!(f, "C((t))"),
            FieldTag::Ext { base, min_poly } => write!(f, "{base}[a]/({min_poly})"),
        }
    }
}

/// A field of characteristic 0 or an odd prime.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements for finite fields.
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn tag(&self) -> FieldTag;
    fn format(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut result = self.one();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if exp.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }

    /// Euler's criterion, for finite fields of odd order.
    fn is_square_finite(&self, a: &Self::Elem) -> Option<bool> {
        let q = self.order()?;
        if self.is_zero(a) {
            return Some(true);
        }
        let e = (q - BigUint::one()) >> 1;
        Some(self.is_one(&self.pow(a, &e)))
    }
}

/// Finite fields: enumeration and sampling on top of [`Field`].
pub trait FiniteField: Field {
    fn elements(&self) -> Vec<Self::Elem>;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Unique p-th root (Frobenius is bijective).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.order().expect("finite field");
        let p = BigUint::from(self.characteristic());
        self.pow(a, &(q / p))
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.is_square_finite(a).expect("finite field")
    }
}

/// Decides irreducibility of univariate polynomials; gates extension construction.
pub trait CheckIrreducible: Field {
    fn is_irreducible(&self, p: &UPoly<Self>) -> Result<bool>;
}

/// Rabin's test over a finite field with `q` elements.
pub(crate) fn rabin_irreducible<F: Field>(f: &UPoly<F>, q: &BigUint) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    let f = f.monic();
    let x = UPoly::x(&field);
    // x^(q^k) mod f
    let frob_pow = |k: usize| -> UPoly<F> {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(q, &f);
        }
        h
    };
    if frob_pow(n).sub(&x).rem(&f).map(|r| !r.is_zero()).unwrap_or(true) {
        return false;
    }
    for r in prime_divisors_usize(n) {
        let h = frob_pow(n / r).sub(&x);
        let g = UPoly::gcd(&h, &f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn prime_divisors_usize(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

