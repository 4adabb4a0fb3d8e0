use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CheckIrreducible, Field, FieldTag};
use crate::error::Result;
use crate::poly::UPoly;

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Q
    }
    fn format(&self, a: &Rational) -> String {
        format_rational(a)
    }
}

pub(crate) fn format_rational(a: &Rational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl CheckIrreducible for Rationals {
    fn is_irreducible(&self, p: &UPoly<Self>) -> Result<bool> {
        let Some(d) = p.degree() else { return Ok(false) };
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let fac = crate::poly::factor_rational(p)?;
        Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(a: &Rational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}
