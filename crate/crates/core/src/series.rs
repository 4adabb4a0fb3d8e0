//! Truncated power series and implicit-function roots.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::MPoly;

/// c_0 + c_1 x + ... + c_N x^N, known modulo x^(N+1).
#[derive(Clone, Debug)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for TruncatedSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> TruncatedSeries<F> {
    /// Pads or truncates `coeffs` to precision `n` (n + 1 coefficients).
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>, n: usize) -> Self {
        coeffs.resize(n + 1, field.zero());
        TruncatedSeries { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Self::new(field, Vec::new(), n)
    }

    pub fn constant(field: &F, c: F::Elem, n: usize) -> Self {
        Self::new(field, vec![c], n)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Index of the first nonzero coefficient within the precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(&self.field, self.coeffs.clone(), n)
    }

    fn common_precision(&self, other: &Self) -> usize {
        self.precision().min(other.precision())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_precision(other);
        let f = &self.field;
        Self::new(f, (0..=n).map(|i| f.add(&self.coeffs[i], &other.coeffs[i])).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_precision(other);
        let f = &self.field;
        Self::new(f, (0..=n).map(|i| f.sub(&self.coeffs[i], &other.coeffs[i])).collect(), n)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect(), self.precision())
    }

    /// Multiplication by x^k, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let mut coeffs = vec![self.field.zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self::new(&self.field, coeffs, n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_precision(other);
        let f = &self.field;
        let mut out = vec![f.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out, n)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let f = &self.field;
        let n = self.precision();
        let c0 = f.inv(&self.coeffs[0]).ok_or(Error::DivisionByZero)?;
        let mut out = vec![f.zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(&s, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&s, &c0));
        }
        Ok(Self::new(f, out, n))
    }

    pub fn format(&self) -> String {
        let poly = crate::poly::UPoly::new(&self.field, self.coeffs.clone());
        format!("{} + O(x^{})", poly.format_in("x"), self.precision() + 1)
    }
}

/// f(x, G(x)) truncated at the precision of `g_series`; f is bivariate in (x, y).
pub fn compose_bivariate<F: Field>(f: &MPoly<F>, g_series: &TruncatedSeries<F>) -> TruncatedSeries<F> {
    assert_eq!(f.nvars(), 2, "bivariate polynomial expected");
    let field = g_series.field();
    let n = g_series.precision();
    let mut powers = vec![TruncatedSeries::constant(field, field.one(), n)];
    let mut acc = TruncatedSeries::zero(field, n);
    for (m, c) in f.terms() {
        let (i, j) = (m[0] as usize, m[1] as usize);
        if i > n {
            continue;
        }
        while powers.len() <= j {
            let next = powers.last().expect("nonempty").mul(g_series);
            powers.push(next);
        }
        acc = acc.add(&powers[j].shift(i).scale(c));
    }
    acc
}

fn check_henselian<F: Field>(g: &MPoly<F>) -> Result<F::Elem> {
    let field = g.field();
    let origin = [field.zero(), field.zero()];
    if !field.is_zero(&g.eval(&origin)) {
        return Err(Error::NotHenselian(format!("{g} does not vanish at the origin")));
    }
    let gy = g.partial(1).eval(&origin);
    if field.is_zero(&gy) {
        return Err(Error::NotHenselian(format!("d/dy of {g} vanishes at the origin")));
    }
    Ok(gy)
}

/// The root G of g(x, G(x)) = 0 with G(0) = 0, modulo x^(n+1), by Newton
/// iteration with precision doubling.
pub fn hensel_series_root<F: Field>(g: &MPoly<F>, n: usize) -> Result<TruncatedSeries<F>> {
    check_henselian(g)?;
    let field = g.field();
    let gy = g.partial(1);
    let mut root = TruncatedSeries::zero(field, 0);
    let mut prec = 0;
    while prec < n {
        prec = (2 * prec + 1).min(n);
        let lifted = root.truncate(prec);
        let value = compose_bivariate(g, &lifted);
        let slope = compose_bivariate(&gy, &lifted);
        root = lifted.sub(&value.mul(&slope.inv()?));
    }
    Ok(root.truncate(n))
}

/// Same root computed one coefficient at a time:
/// G_k = -[x^k] g(x, G_{<k}) / g_y(0, 0).
pub fn implicit_series_root<F: Field>(g: &MPoly<F>, n: usize) -> Result<TruncatedSeries<F>> {
    let gy0 = check_henselian(g)?;
    let field = g.field();
    let inv = field.inv(&gy0).ok_or(Error::DivisionByZero)?;
    let mut coeffs = vec![field.zero(); n + 1];
    for k in 1..=n {
        let partial = TruncatedSeries::new(field, coeffs.clone(), k);
        let r = compose_bivariate(g, &partial).coeff(k);
        coeffs[k] = field.neg(&field.mul(&r, &inv));
    }
    Ok(TruncatedSeries::new(field, coeffs, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn p(terms: &[(i64, &[u32])]) -> MPoly<Rationals> {
        MPoly::from_i64_terms(&Rationals, &["x", "y"], terms)
    }

    fn ints(s: &TruncatedSeries<Rationals>) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn spec_roots() {
        let g = p(&[(1, &[0, 1]), (-1, &[1, 0])]);
        assert_eq!(ints(&hensel_series_root(&g, 5).unwrap()), vec![0, 1, 0, 0, 0, 0]);
        let g = p(&[(1, &[0, 1]), (-1, &[2, 0])]);
        assert_eq!(ints(&hensel_series_root(&g, 5).unwrap()), vec![0, 0, 1, 0, 0, 0]);
        let g = p(&[(1, &[0, 3]), (1, &[0, 1]), (-1, &[1, 0])]);
        let root = hensel_series_root(&g, 5).unwrap();
        assert_eq!(ints(&root), vec![0, 1, 0, -1, 0, 3]);
        assert_eq!(compose_bivariate(&g, &root).order(), None);
        assert_eq!(root, implicit_series_root(&g, 5).unwrap());
    }

    #[test]
    fn not_henselian() {
        let g = p(&[(1, &[0, 2]), (-1, &[1, 0])]);
        assert!(matches!(hensel_series_root(&g, 4), Err(Error::NotHenselian(_))));
        let g = p(&[(1, &[0, 1]), (1, &[0, 0])]);
        assert!(matches!(hensel_series_root(&g, 4), Err(Error::NotHenselian(_))));
    }

    #[test]
    fn inverse_series() {
        let f = Rationals;
        let one_minus_x = TruncatedSeries::new(&f, vec![f.from_i64(1), f.from_i64(-1)], 4);
        assert_eq!(ints(&one_minus_x.inv().unwrap()), vec![1, 1, 1, 1, 1]);
        assert_eq!(one_minus_x.format(), "-x + 1 + O(x^5)");
    }
}
