//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::upoly::format_terms;
use super::UPoly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector; its length equals the number of variables.
pub type Monomial = Vec<u32>;

/// Sparse polynomial over `F` in a named, ordered list of variables.
#[derive(Clone, Debug)]
pub struct MPoly<F: Field> {
    field: F,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.terms == other.terms
    }
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F, vars: &[&str]) -> Self {
        MPoly {
            field: field.clone(),
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        MPoly { field: self.field.clone(), vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn with_vars(field: &F, vars: Vec<String>) -> Self {
        MPoly { field: field.clone(), vars: Arc::new(vars), terms: BTreeMap::new() }
    }

    pub fn from_terms(field: &F, vars: &[&str], terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from (coefficient, exponents) pairs with integer coefficients.
    pub fn from_i64_terms(field: &F, vars: &[&str], terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(field, vars, terms.iter().map(|(c, m)| (m.to_vec(), field.from_i64(*c))))
    }

    pub fn constant_like(&self, c: F::Elem) -> Self {
        let mut p = self.empty_like();
        p.add_term(vec![0; self.nvars()], c);
        p
    }

    pub fn var_like(&self, i: usize) -> Self {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        let mut p = self.empty_like();
        p.add_term(m, self.field.one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        assert_eq!(m.len(), self.nvars(), "exponent vector length");
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = f.add(existing, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(self.vars == other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.empty_like();
        if self.field.is_zero(c) {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.empty_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] -= 1;
            out.add_term(m2, self.field.mul(c, &self.field.from_i64(m[var] as i64)));
        }
        out
    }

    /// Evaluates at a point whose coordinates live in a field `G` receiving `F`.
    pub fn eval_in<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem, point: &[G::Elem]) -> G::Elem {
        assert_eq!(point.len(), self.nvars(), "point dimension");
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = target.mul(&t, &target.pow_u64(x, e as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        self.eval_in(&self.field, |c| c.clone(), point)
    }

    /// Maps coefficients into another field, keeping the variables.
    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        let mut out = MPoly::with_vars(target, self.vars.to_vec());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Substitutes `images[i]` for variable i; all images share one variable list.
    pub fn substitute(&self, images: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let template = &images[0];
        let mut out = template.empty_like();
        // cache powers of each image
        let mut powers: Vec<Vec<MPoly<F>>> = images.iter().map(|p| vec![p.constant_like(self.field.one())]).collect();
        for (m, c) in &self.terms {
            let mut t = template.constant_like(c.clone());
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Renames/reorders variables: new variable list, old index i goes to `map[i]`.
    pub fn relabel(&self, new_vars: &[&str], map: &[usize]) -> Self {
        let n = new_vars.len();
        let mut out = Self::zero(&self.field, new_vars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; n];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    m2[map[i]] += e;
                }
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Coefficients of `var^k` for k = 0..=deg, each free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly<F>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![self.empty_like(); deg + 1];
        for (m, c) in &self.terms {
            let k = m[var] as usize;
            let mut m2 = m.clone();
            m2[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Univariate view when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UPoly<F>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial {self} is not univariate in {}",
                    self.vars[var]
                )));
            }
            coeffs[m[var] as usize] = c.clone();
        }
        Ok(UPoly::new(&self.field, coeffs))
    }

    pub fn from_univariate(p: &UPoly<F>, vars: &[&str], var: usize) -> Self {
        let mut out = Self::zero(p.field(), vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; vars.len()];
            m[var] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Leading term under lex order with variable 0 most significant.
    fn lex_leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Exact division; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_compatible(d);
        let (dm, dc) = d.lex_leading().ok_or(Error::DivisionByZero)?;
        let dc_inv = self.field.inv(dc).ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = self.empty_like();
        while let Some((rm, rc)) = rem.lex_leading() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return Err(Error::Internal("inexact multivariate division".into()));
            }
            let m: Monomial = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let c = self.field.mul(rc, &dc_inv);
            let mut t = self.empty_like();
            t.add_term(m, c);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    pub fn format(&self) -> String {
        let f = &self.field;
        // descending total degree, then descending lex
        let mut terms: Vec<(&Monomial, &F::Elem)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        format_terms(terms.into_iter().map(|(m, c)| {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
                .collect();
            (f.format(c), mono.join("*"))
        }))
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}
