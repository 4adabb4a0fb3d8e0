//! Grothendieck–Witt group elements as diagonal forms.
//!
//! A [`GwElement`] is a list of nonzero diagonal entries and is not a normal
//! form: two elements are compared through the invariant system of their
//! field (see [`GwClassify`]).

mod invariants;

pub use invariants::{
    ct_classify, discriminant, gw_equal, invariants, signature, witt_residue_2, witt_residue_p, CtClass, Disc,
    GwClassify, InvariantVector, WittFpClass,
};

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionField, Field};

/// The form <a_1> + ... + <a_r> over `field`.
#[derive(Clone, Debug)]
pub struct GwElement<F: Field> {
    field: F,
    diag: Vec<F::Elem>,
}

impl<F: Field> PartialEq for GwElement<F> {
    /// Syntactic equality of the diagonal lists; use [`gw_equal`] for equality in GW(k).
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.diag == other.diag
    }
}

impl<F: Field> GwElement<F> {
    pub fn new(field: &F, diag: Vec<F::Elem>) -> Result<Self> {
        if diag.iter().any(|a| field.is_zero(a)) {
            return Err(Error::ZeroElement);
        }
        Ok(GwElement { field: field.clone(), diag })
    }

    pub fn from_i64s(field: &F, diag: &[i64]) -> Result<Self> {
        Self::new(field, diag.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn zero(field: &F) -> Self {
        GwElement { field: field.clone(), diag: Vec::new() }
    }

    /// <a>
    pub fn unit(field: &F, a: F::Elem) -> Result<Self> {
        Self::new(field, vec![a])
    }

    pub fn one(field: &F) -> Self {
        GwElement { field: field.clone(), diag: vec![field.one()] }
    }

    /// H = <1> + <-1>
    pub fn hyperbolic(field: &F) -> Self {
        GwElement { field: field.clone(), diag: vec![field.one(), field.neg(&field.one())] }
    }

    /// k copies of H.
    pub fn hyperbolic_multiple(field: &F, k: usize) -> Self {
        Self::hyperbolic(field).repeat(k)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn diag(&self) -> &[F::Elem] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MismatchedField(self.field.tag().to_string(), other.field.tag().to_string()));
        }
        Ok(())
    }

    /// Direct sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut diag = self.diag.clone();
        diag.extend(other.diag.iter().cloned());
        Ok(GwElement { field: self.field.clone(), diag })
    }

    /// Tensor product: all pairwise products of entries.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let diag = self.diag.iter().flat_map(|a| other.diag.iter().map(move |b| f.mul(a, b))).collect();
        Ok(GwElement { field: f.clone(), diag })
    }

    /// <a> * self
    pub fn scale(&self, a: &F::Elem) -> Result<Self> {
        if self.field.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        Ok(GwElement { field: f.clone(), diag: self.diag.iter().map(|b| f.mul(a, b)).collect() })
    }

    /// self + ... + self (k summands).
    pub fn repeat(&self, k: usize) -> Self {
        let mut diag = Vec::with_capacity(self.diag.len() * k);
        for _ in 0..k {
            diag.extend(self.diag.iter().cloned());
        }
        GwElement { field: self.field.clone(), diag }
    }

    pub fn sum<'a>(field: &F, items: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        F: 'a,
    {
        items.into_iter().try_fold(Self::zero(field), |acc, x| acc.add(x))
    }

    /// Maps the entries into another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Result<GwElement<G>> {
        GwElement::new(target, self.diag.iter().map(f).collect())
    }

    /// Text form that pairs syntactic <a> + <-a> entries into copies of H,
    /// e.g. "2·H + <3>".
    pub fn format_hyperbolic(&self) -> String {
        let f = &self.field;
        let mut rest: Vec<F::Elem> = Vec::new();
        let mut h = 0usize;
        for a in &self.diag {
            let na = f.neg(a);
            if let Some(pos) = rest.iter().position(|b| *b == na) {
                rest.remove(pos);
                h += 1;
            } else {
                rest.push(a.clone());
            }
        }
        let mut parts = Vec::new();
        match h {
            0 => {}
            1 => parts.push("H".to_string()),
            _ => parts.push(format!("{h}·H")),
        }
        parts.extend(rest.iter().map(|a| format!("⟨{}⟩", f.format(a))));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Result<Value>
    where
        F: GwClassify,
    {
        let inv = invariants(self)?;
        let mut v = inv.to_json();
        v["field"] = json!(self.field.tag().to_string());
        v["diag"] = json!(self.diag.iter().map(|a| self.field.format(a)).collect::<Vec<_>>());
        Ok(v)
    }
}

impl<F: Field> fmt::Display for GwElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diag.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.diag.iter().map(|a| format!("⟨{}⟩", self.field.format(a))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonalizes a nondegenerate symmetric matrix by congruence.
pub fn gram_diagonalize<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<GwElement<F>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("Gram matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] && !field.is_zero(&field.sub(&m[i][j], &m[j][i])) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if field.is_zero(&a[i][i]) {
            if let Some(j) = (i + 1..n).find(|&j| !field.is_zero(&a[j][j])) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !field.is_zero(&a[i][j])) {
                // e_i <- e_i + e_j
                for c in 0..n {
                    a[i][c] = field.add(&a[i][c], &a[j][c]);
                }
                for r in 0..n {
                    a[r][i] = field.add(&a[r][i], &a[r][j]);
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = a[i][i].clone();
        let inv = field.inv(&pivot).ok_or(Error::DegenerateForm)?;
        for r in i + 1..n {
            if field.is_zero(&a[r][i]) {
                continue;
            }
            let factor = field.mul(&a[r][i], &inv);
            for c in i..n {
                let t = field.mul(&factor, &a[i][c]);
                a[r][c] = field.sub(&a[r][c], &t);
            }
            for rr in i..n {
                let t = field.mul(&factor, &a[rr][i]);
                a[rr][r] = field.sub(&a[rr][r], &t);
            }
        }
        diag.push(pivot);
    }
    GwElement::new(field, diag)
}

/// Gram matrix of (x, y) -> Tr(beta x y) on the power basis of `ext`.
pub fn trace_gram<F: Field>(ext: &ExtensionField<F>, beta: &ExtElem<F>) -> Vec<Vec<F::Elem>> {
    let n = ext.degree();
    let a = ext.generator();
    // Tr(beta a^k) for k < 2n - 1
    let mut traces = Vec::with_capacity(2 * n);
    let mut cur = beta.clone();
    for _ in 0..(2 * n).saturating_sub(1) {
        traces.push(ext.trace(&cur));
        cur = ext.mul(&cur, &a);
    }
    (0..n).map(|i| (0..n).map(|j| traces[i + j].clone()).collect()).collect()
}

/// Tr_{E/k}<beta> as a diagonal form over the base field.
pub fn trace_form<F: Field>(ext: &ExtensionField<F>, beta: &ExtElem<F>) -> Result<GwElement<F>> {
    if ext.is_zero(beta) {
        return Err(Error::ZeroElement);
    }
    gram_diagonalize(ext.base(), &trace_gram(ext, beta))
}
