//! Per-field invariant systems deciding equality in GW(k).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::GwElement;
use crate::arith::{factor_integer, is_prime_u64, legendre, mod_u64, squarefree_part, valuation};
use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, FiniteField, PrimeField, RationalFunction, RationalFunctions, Rationals};

/// Class in W(F_p) of a diagonal form over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "group")]
pub enum WittFpClass {
    /// p = 3 mod 4: multiples of <1> in Z/4.
    #[serde(rename = "Z/4")]
    Cyclic { value: u8 },
    /// p = 1 mod 4: coordinates of <1> and <r> in Z/2 x Z/2, r the least non-residue.
    #[serde(rename = "Z/2xZ/2")]
    Klein { r: u64, one: u8, nonsquare: u8 },
}

impl WittFpClass {
    pub fn zero(p: u64) -> Self {
        if p % 4 == 3 {
            WittFpClass::Cyclic { value: 0 }
        } else {
            let r = PrimeField::new(p).expect("odd prime").least_nonresidue();
            WittFpClass::Klein { r, one: 0, nonsquare: 0 }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, WittFpClass::Cyclic { value: 0 } | WittFpClass::Klein { one: 0, nonsquare: 0, .. })
    }

    /// Adds the class of <u> for a unit u mod p.
    pub fn add_unit(self, u: u64, p: u64) -> Self {
        let square = legendre(u, p) == 1;
        match self {
            WittFpClass::Cyclic { value } => {
                let step = if square { 1 } else { 3 };
                WittFpClass::Cyclic { value: (value + step) % 4 }
            }
            WittFpClass::Klein { r, one, nonsquare } => {
                if square {
                    WittFpClass::Klein { r, one: one ^ 1, nonsquare }
                } else {
                    WittFpClass::Klein { r, one, nonsquare: nonsquare ^ 1 }
                }
            }
        }
    }

    pub fn add(self, other: Self) -> Self {
        match (self, other) {
            (WittFpClass::Cyclic { value: a }, WittFpClass::Cyclic { value: b }) => {
                WittFpClass::Cyclic { value: (a + b) % 4 }
            }
            (WittFpClass::Klein { r, one: a1, nonsquare: a2 }, WittFpClass::Klein { one: b1, nonsquare: b2, .. }) => {
                WittFpClass::Klein { r, one: a1 ^ b1, nonsquare: a2 ^ b2 }
            }
            _ => panic!("Witt classes of different residue fields"),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Square class of the discriminant, per field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disc {
    /// Over Q: squarefree integer with sign.
    Integer(BigInt),
    /// Over a finite field: whether the product of the entries is a square.
    Square(bool),
    /// Over the C((t)) model: parity of the total t-valuation.
    Parity(u8),
}

impl Disc {
    pub fn to_json(&self) -> Value {
        match self {
            Disc::Integer(n) => n.to_i64().map(Value::from).unwrap_or_else(|| json!(n.to_string())),
            Disc::Square(true) => json!("square"),
            Disc::Square(false) => json!("nonsquare"),
            Disc::Parity(b) => json!(b),
        }
    }
}

/// (rank, signature, disc, d2, dp): the data compared by [`gw_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    pub rank: usize,
    pub signature: Option<i64>,
    pub disc: Disc,
    pub d2: Option<u8>,
    /// Only primes with a nonzero residue are stored.
    pub dp: Option<BTreeMap<u64, WittFpClass>>,
}

impl InvariantVector {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "rank": self.rank, "disc": self.disc.to_json() });
        if let Some(s) = self.signature {
            v["signature"] = json!(s);
        }
        if let Some(d2) = self.d2 {
            v["d2"] = json!(d2);
        }
        if let Some(dp) = &self.dp {
            let m: serde_json::Map<String, Value> = dp.iter().map(|(p, c)| (p.to_string(), c.to_json())).collect();
            v["dp"] = Value::Object(m);
        }
        v
    }
}

/// Fields with a complete, computable invariant system for GW(k).
pub trait GwClassify: Field {
    fn invariant_vector(&self, diag: &[Self::Elem]) -> Result<InvariantVector>;

    fn form_signature(&self, _diag: &[Self::Elem]) -> Result<i64> {
        Err(Error::UnsupportedField(format!("signature over {}", self.tag())))
    }
}

fn finite_invariants<F: FiniteField>(field: &F, diag: &[F::Elem]) -> InvariantVector {
    let prod = diag.iter().fold(field.one(), |acc, a| field.mul(&acc, a));
    InvariantVector { rank: diag.len(), signature: None, disc: Disc::Square(field.is_square(&prod)), d2: None, dp: None }
}

impl GwClassify for PrimeField {
    fn invariant_vector(&self, diag: &[u64]) -> Result<InvariantVector> {
        Ok(finite_invariants(self, diag))
    }
}

impl<B: FiniteField> GwClassify for ExtensionField<B> {
    fn invariant_vector(&self, diag: &[Self::Elem]) -> Result<InvariantVector> {
        Ok(finite_invariants(self, diag))
    }
}

impl GwClassify for RationalFunctions {
    fn invariant_vector(&self, diag: &[RationalFunction]) -> Result<InvariantVector> {
        let mut parity = 0i64;
        for a in diag {
            parity += a.t_valuation()?;
        }
        Ok(InvariantVector {
            rank: diag.len(),
            signature: None,
            disc: Disc::Parity(parity.rem_euclid(2) as u8),
            d2: None,
            dp: None,
        })
    }
}

impl GwClassify for Rationals {
    fn invariant_vector(&self, diag: &[Self::Elem]) -> Result<InvariantVector> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for a in diag {
            num *= a.numer();
            den *= a.denom();
        }
        let disc = if diag.is_empty() { BigInt::one() } else { squarefree_part(&num, &den)? };
        let d2 = if disc.is_zero() { 0 } else { (valuation(&disc, 2) % 2) as u8 };
        let mut primes = Vec::new();
        for a in diag {
            for part in [a.numer(), a.denom()] {
                for (p, _) in factor_integer(part.magnitude())? {
                    let p = p.to_u64().ok_or_else(|| Error::FactorizationBudget(p.to_string()))?;
                    if p != 2 {
                        primes.push(p);
                    }
                }
            }
        }
        primes.sort_unstable();
        primes.dedup();
        let mut dp = BTreeMap::new();
        for p in primes {
            let c = residue_p(diag, p)?;
            if !c.is_zero() {
                dp.insert(p, c);
            }
        }
        Ok(InvariantVector {
            rank: diag.len(),
            signature: Some(self.form_signature(diag)?),
            disc: Disc::Integer(disc),
            d2: Some(d2),
            dp: Some(dp),
        })
    }

    fn form_signature(&self, diag: &[Self::Elem]) -> Result<i64> {
        Ok(diag.iter().map(|a| if a.is_positive() { 1 } else { -1 }).sum())
    }
}

fn residue_p(diag: &[num_rational::BigRational], p: u64) -> Result<WittFpClass> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut class = WittFpClass::zero(p);
    for q in diag {
        let vn = valuation(q.numer(), p) as i64;
        let vd = valuation(q.denom(), p) as i64;
        if (vn - vd).rem_euclid(2) == 0 {
            continue;
        }
        let pp = BigInt::from(p);
        let a = q.numer() / pp.pow(vn as u32);
        let b = q.denom() / pp.pow(vd as u32);
        let fp = PrimeField::new(p)?;
        let u = fp.mul(&mod_u64(&a, p), &fp.inv(&mod_u64(&b, p)).expect("unit"));
        class = class.add_unit(u, p);
    }
    Ok(class)
}

pub fn invariants<F: GwClassify>(x: &GwElement<F>) -> Result<InvariantVector> {
    x.field().invariant_vector(x.diag())
}

/// Signature; defined over Q (the real view).
pub fn signature<F: GwClassify>(x: &GwElement<F>) -> Result<i64> {
    x.field().form_signature(x.diag())
}

pub fn discriminant<F: GwClassify>(x: &GwElement<F>) -> Result<Disc> {
    Ok(invariants(x)?.disc)
}

/// v_2 of the squarefree discriminant, mod 2.
pub fn witt_residue_2(x: &GwElement<Rationals>) -> Result<u8> {
    Ok(invariants(x)?.d2.expect("rational invariants carry d2"))
}

/// The second residue map at an odd prime p.
pub fn witt_residue_p(x: &GwElement<Rationals>, p: u64) -> Result<WittFpClass> {
    residue_p(x.diag(), p)
}

/// Equality in GW(k) via the field's invariant system.
pub fn gw_equal<F: GwClassify>(a: &GwElement<F>, b: &GwElement<F>) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::MismatchedField(a.field().tag().to_string(), b.field().tag().to_string()));
    }
    Ok(invariants(a)? == invariants(b)?)
}

/// Generators of GW(C((t))) modulo the rank: <1> or <t>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CtClass {
    #[serde(rename = "<1>")]
    One,
    #[serde(rename = "<t>")]
    T,
}

/// <g> = <1> for even t-valuation, <t> for odd; the leading coefficient is
/// treated as a square.
pub fn ct_classify(g: &RationalFunction) -> Result<CtClass> {
    Ok(if g.t_valuation()?.rem_euclid(2) == 0 { CtClass::One } else { CtClass::T })
}
