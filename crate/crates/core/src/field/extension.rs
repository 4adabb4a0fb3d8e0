use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rand::RngCore;

use super::{rabin_irreducible, CheckIrreducible, Field, FieldTag, FiniteField, Rational};
use crate::error::{Error, Result};
use crate::poly::UPoly;

/// Element of `base[a]/(m)`: coefficients of 1, a, ..., a^(deg-1).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> ExtElem<F> {
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
}

#[derive(Debug)]
struct ExtInner<F: Field> {
    base: F,
    modulus: UPoly<F>,
}

/// A finite extension `base[a]/(m)` with `m` monic irreducible.
#[derive(Debug, Clone)]
pub struct ExtensionField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> PartialEq for ExtensionField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: CheckIrreducible> ExtensionField<F> {
    /// Builds the extension, verifying that the minimal polynomial is monic and irreducible.
    pub fn new(minimal_poly: UPoly<F>) -> Result<Self> {
        let base = minimal_poly.field().clone();
        let text = minimal_poly.format_in("a");
        match minimal_poly.degree() {
            None | Some(0) => return Err(Error::InvalidModulus(text)),
            _ => {}
        }
        if !minimal_poly.is_monic() {
            return Err(Error::InvalidModulus(text));
        }
        if !base.is_irreducible(&minimal_poly)? {
            return Err(Error::Reducible(text));
        }
        Ok(ExtensionField { inner: Arc::new(ExtInner { base, modulus: minimal_poly }) })
    }
}

impl<F: Field> ExtensionField<F> {
    /// The trivial extension `base[a]/(a - r)`, i.e. a copy of the base field with
    /// generator `r`. Linear polynomials are irreducible over every field.
    pub fn rational(base: &F, r: F::Elem) -> Self {
        let modulus = UPoly::new(base, vec![base.neg(&r), base.one()]);
        ExtensionField { inner: Arc::new(ExtInner { base: base.clone(), modulus }) }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn minimal_poly(&self) -> &UPoly<F> {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().expect("modulus has positive degree")
    }

    /// Canonical representative of a polynomial in the generator.
    pub fn from_poly(&self, p: &UPoly<F>) -> ExtElem<F> {
        let r = p.rem(&self.inner.modulus).expect("modulus nonzero");
        self.pad(r.into_coeffs())
    }

    /// Element from a coefficient vector of length at most the degree.
    pub fn elem(&self, coeffs: Vec<F::Elem>) -> Result<ExtElem<F>> {
        if coeffs.len() > self.degree() {
            return Err(Error::MismatchedParents(format!(
                "coefficient vector of length {} for an extension of degree {}",
                coeffs.len(),
                self.degree()
            )));
        }
        Ok(self.pad(coeffs))
    }

    fn pad(&self, mut coeffs: Vec<F::Elem>) -> ExtElem<F> {
        coeffs.resize(self.degree(), self.inner.base.zero());
        ExtElem { coeffs }
    }

    pub fn to_poly(&self, a: &ExtElem<F>) -> UPoly<F> {
        UPoly::new(&self.inner.base, a.coeffs.clone())
    }

    pub fn generator(&self) -> ExtElem<F> {
        self.from_poly(&UPoly::x(&self.inner.base))
    }

    pub fn embed(&self, c: &F::Elem) -> ExtElem<F> {
        self.pad(vec![c.clone()])
    }

    /// Returns the base-field value if the element lies in the base field.
    pub fn as_base(&self, a: &ExtElem<F>) -> Option<F::Elem> {
        if self.degree() == 1 {
            return Some(a.coeffs[0].clone());
        }
        let b = &self.inner.base;
        a.coeffs[1..].iter().all(|c| b.is_zero(c)).then(|| a.coeffs[0].clone())
    }

    /// Matrix of multiplication by `beta` on the power basis; column i holds beta * a^i.
    pub fn multiplication_matrix(&self, beta: &ExtElem<F>) -> Vec<Vec<F::Elem>> {
        let n = self.degree();
        let a = self.generator();
        let mut cols = Vec::with_capacity(n);
        let mut cur = beta.clone();
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            cur = self.mul(&cur, &a);
        }
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Field trace to the base: trace of the multiplication operator.
    pub fn trace(&self, beta: &ExtElem<F>) -> F::Elem {
        let b = &self.inner.base;
        let a = self.generator();
        let mut cur = beta.clone();
        let mut acc = b.zero();
        for i in 0..self.degree() {
            acc = b.add(&acc, &cur.coeffs[i]);
            cur = self.mul(&cur, &a);
        }
        acc
    }

    /// Field norm to the base: determinant of the multiplication operator.
    pub fn norm(&self, beta: &ExtElem<F>) -> F::Elem {
        crate::linalg::determinant(&self.inner.base, self.multiplication_matrix(beta))
    }

    pub fn format_with(&self, a: &ExtElem<F>, var: &str) -> String {
        self.to_poly(a).format_in(var)
    }
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = ExtElem<F>;

    fn zero(&self) -> ExtElem<F> {
        self.pad(Vec::new())
    }
    fn one(&self) -> ExtElem<F> {
        self.embed(&self.inner.base.one())
    }
    fn from_bigint(&self, n: &BigInt) -> ExtElem<F> {
        self.embed(&self.inner.base.from_bigint(n))
    }
    fn from_rational(&self, q: &Rational) -> Option<ExtElem<F>> {
        self.inner.base.from_rational(q).map(|c| self.embed(&c))
    }
    fn add(&self, a: &ExtElem<F>, b: &ExtElem<F>) -> ExtElem<F> {
        let f = &self.inner.base;
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f.add(x, y)).collect() }
    }
    fn sub(&self, a: &ExtElem<F>, b: &ExtElem<F>) -> ExtElem<F> {
        let f = &self.inner.base;
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f.sub(x, y)).collect() }
    }
    fn mul(&self, a: &ExtElem<F>, b: &ExtElem<F>) -> ExtElem<F> {
        let prod = self.to_poly(a).mul(&self.to_poly(b));
        self.from_poly(&prod)
    }
    fn neg(&self, a: &ExtElem<F>) -> ExtElem<F> {
        let f = &self.inner.base;
        ExtElem { coeffs: a.coeffs.iter().map(|x| f.neg(x)).collect() }
    }
    fn inv(&self, a: &ExtElem<F>) -> Option<ExtElem<F>> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = UPoly::xgcd(&self.to_poly(a), &self.inner.modulus);
        // g is 1 because the modulus is irreducible
        if g.degree() != Some(0) {
            return None;
        }
        Some(self.from_poly(&s))
    }
    fn is_zero(&self, a: &ExtElem<F>) -> bool {
        a.coeffs.iter().all(|c| self.inner.base.is_zero(c))
    }
    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }
    fn order(&self) -> Option<BigUint> {
        self.inner.base.order().map(|q| q.pow(self.degree() as u32))
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Ext {
            base: Box::new(self.inner.base.tag()),
            min_poly: self.inner.modulus.format_in("a"),
        }
    }
    fn format(&self, a: &ExtElem<F>) -> String {
        self.format_with(a, "a")
    }
}

impl<F: FiniteField> FiniteField for ExtensionField<F> {
    fn elements(&self) -> Vec<ExtElem<F>> {
        let base_elems = self.inner.base.elements();
        let mut out: Vec<Vec<F::Elem>> = vec![Vec::new()];
        for _ in 0..self.degree() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    base_elems.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|coeffs| ExtElem { coeffs }).collect()
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> ExtElem<F> {
        ExtElem { coeffs: (0..self.degree()).map(|_| self.inner.base.random_elem(rng)).collect() }
    }
}

impl<F: FiniteField> CheckIrreducible for ExtensionField<F> {
    fn is_irreducible(&self, p: &UPoly<Self>) -> Result<bool> {
        let q = self.order().expect("finite");
        Ok(rabin_irreducible(p, &q))
    }
}

/// Searches monic polynomials of degree `deg` over a finite field in a fixed
/// enumeration order and returns the first irreducible one.
pub fn first_irreducible<F: FiniteField + CheckIrreducible>(base: &F, deg: usize) -> UPoly<F> {
    let elems = base.elements();
    let q = elems.len();
    let total = (q as u128).pow(deg as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(elems[(rest % q as u128) as usize].clone());
            rest /= q as u128;
        }
        coeffs.push(base.one());
        let p = UPoly::new(base, coeffs);
        if base.is_irreducible(&p).unwrap_or(false) {
            return p;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
