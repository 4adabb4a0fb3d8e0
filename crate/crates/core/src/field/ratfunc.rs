//! Rational functions in t over Q: the exact stand-in for C((t)).
//!
//! Coefficients live in Q and model complex numbers. Every nonzero leading
//! coefficient is treated as a square, since every nonzero complex number is
//! one; only the t-adic valuation of an element carries square-class
//! information in this model.

use num_bigint::BigInt;
use num_traits::One;

use super::{CheckIrreducible, Field, FieldTag, Rational, Rationals};
use crate::error::{Error, Result};
use crate::poly::UPoly;

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: UPoly<Rationals>,
    den: UPoly<Rationals>,
}

impl RationalFunction {
    pub fn new(num: UPoly<Rationals>, den: UPoly<Rationals>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = UPoly::gcd(&num, &den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc_inv = den.lc().recip();
        Ok(RationalFunction { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(num: UPoly<Rationals>) -> Self {
        RationalFunction { num, den: UPoly::one(&Rationals) }
    }

    /// c * t^k for integer k.
    pub fn monomial(c: Rational, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(UPoly::monomial(&Rationals, c, k as usize))
        } else {
            RationalFunction {
                num: UPoly::constant(&Rationals, c),
                den: UPoly::monomial(&Rationals, Rational::one(), (-k) as usize),
            }
        }
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn numerator(&self) -> &UPoly<Rationals> {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly<Rationals> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of vanishing at t = 0.
    pub fn t_valuation(&self) -> Result<i64> {
        let vn = self.num.valuation().ok_or_else(|| Error::ZeroInput("t_valuation".into()))?;
        let vd = self.den.valuation().expect("denominator nonzero");
        Ok(vn as i64 - vd as i64)
    }
}

/// The field Q(t), modelling C((t)) for valuation-parity questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalFunctions;

impl Field for RationalFunctions {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(UPoly::zero(&Rationals))
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(UPoly::one(&Rationals))
    }
    fn from_bigint(&self, n: &BigInt) -> RationalFunction {
        RationalFunction::from_poly(UPoly::constant(&Rationals, Rational::from_integer(n.clone())))
    }
    fn from_rational(&self, q: &Rational) -> Option<RationalFunction> {
        Some(RationalFunction::from_poly(UPoly::constant(&Rationals, q.clone())))
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.den == b.den {
            return RationalFunction::new(a.num.add(&b.num), a.den.clone()).expect("nonzero den");
        }
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        RationalFunction::new(num, a.den.mul(&b.den)).expect("nonzero den")
    }
    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        RationalFunction::new(a.num.mul(&b.num), a.den.mul(&b.den)).expect("nonzero den")
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction { num: a.num.neg(), den: a.den.clone() }
    }
    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        if a.is_zero() {
            return None;
        }
        Some(RationalFunction::new(a.den.clone(), a.num.clone()).expect("nonzero"))
    }
    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Ct
    }
    fn format(&self, a: &RationalFunction) -> String {
        let num = a.num.format_in("t");
        if a.den.degree() == Some(0) {
            num
        } else {
            format!("({num})/({})", a.den.format_in("t"))
        }
    }
}

impl CheckIrreducible for RationalFunctions {
    /// Degree-one polynomials, plus the Eisenstein criterion at the prime t.
    fn is_irreducible(&self, p: &UPoly<Self>) -> Result<bool> {
        let Some(d) = p.degree() else { return Ok(false) };
        match d {
            0 => Ok(false),
            1 => Ok(true),
            _ => {
                let lc_val = p.lc().t_valuation()?;
                let c0 = p.coeff(0);
                if lc_val != 0 || c0.is_zero() || c0.t_valuation()? != 1 {
                    return Err(Error::UnsupportedCoefficientField(
                        "irreducibility over Q(t) beyond the Eisenstein criterion at t".into(),
                    ));
                }
                for i in 1..d {
                    let c = p.coeff(i);
                    if !c.is_zero() && c.t_valuation()? < 1 {
                        return Err(Error::UnsupportedCoefficientField(
                            "irreducibility over Q(t) beyond the Eisenstein criterion at t".into(),
                        ));
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Coefficient of the lowest-order term of the Laurent expansion at t = 0.
pub fn lowest_coefficient(r: &RationalFunction) -> Option<Rational> {
    let vn = r.num.valuation()?;
    let vd = r.den.valuation()?;
    Some(r.num.coeff(vn) / r.den.coeff(vd))
}
