//! Homogeneous polynomials on P^n, twisted affine charts and Jacobians.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionField, Field};
use crate::linalg::determinant;
use crate::poly::MPoly;

/// A nonzero homogeneous polynomial in x0..xn.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoly<F: Field> {
    poly: MPoly<F>,
    degree: u32,
}

pub fn projective_vars(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).collect()
}

/// Variable names of chart `l` of P^n: u_j for j != l.
pub fn chart_vars(n: usize, chart: usize) -> Vec<String> {
    (0..=n).filter(|&j| j != chart).map(|j| format!("u{j}")).collect()
}

impl<F: Field> HomogeneousPoly<F> {
    /// Homogeneous of the top total degree occurring in `poly`.
    pub fn new(poly: MPoly<F>) -> Result<Self> {
        let Some(degree) = poly.total_degree() else {
            return Err(Error::ZeroInput("homogeneous polynomial".into()));
        };
        Self::with_degree(poly, degree)
    }

    /// Homogeneous of a prescribed degree `degree`.
    pub fn with_degree(poly: MPoly<F>, degree: u32) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroInput("homogeneous polynomial".into()));
        }
        if degree == 0 {
            return Err(Error::NotHomogeneous("constant polynomial has degree 0".into()));
        }
        if let Some((m, c)) = poly.terms().find(|(m, _)| m.iter().sum::<u32>() != degree) {
            let single = MPoly::with_vars(poly.field(), poly.vars().to_vec());
            let mut t = single;
            t.add_term(m.clone(), c.clone());
            return Err(Error::NotHomogeneous(t.to_string()));
        }
        Ok(HomogeneousPoly { poly, degree })
    }

    /// Ambient dimension n of P^n.
    pub fn n(&self) -> usize {
        self.poly.nvars() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MPoly<F> {
        &self.poly
    }

    pub fn field(&self) -> &F {
        self.poly.field()
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        self.poly.eval(point)
    }

    /// Pulls back along x -> S x for an (n+1)x(n+1) matrix S.
    pub fn linear_transform(&self, s: &[Vec<F::Elem>]) -> Result<Self> {
        let n1 = self.poly.nvars();
        let images: Vec<MPoly<F>> = (0..n1)
            .map(|i| {
                let mut p = MPoly::with_vars(self.field(), self.poly.vars().to_vec());
                for (j, c) in s[i].iter().enumerate() {
                    let mut m = vec![0; n1];
                    m[j] = 1;
                    p.add_term(m, c.clone());
                }
                p
            })
            .collect();
        HomogeneousPoly::new(self.poly.substitute(&images))
    }
}

/// f o phi_l^{-1}: set x_l = 1, x_j -> u_j, and x_0 -> (-1)^l u_0.
pub fn dehomogenize_twisted<F: Field>(f: &HomogeneousPoly<F>, chart: usize) -> Result<MPoly<F>> {
    let n = f.n();
    if chart > n {
        return Err(Error::IndexOutOfRange { index: chart, max: n });
    }
    let field = f.field();
    let vars = chart_vars(n, chart);
    let template = MPoly::with_vars(field, vars);
    let mut images = Vec::with_capacity(n + 1);
    let mut k = 0;
    for j in 0..=n {
        if j == chart {
            images.push(template.constant_like(field.one()));
            continue;
        }
        let mut u = template.var_like(k);
        if j == 0 && chart % 2 == 1 {
            u = u.neg();
        }
        images.push(u);
        k += 1;
    }
    Ok(f.poly().substitute(&images))
}

/// Inverse of [`dehomogenize_twisted`] for a target degree `d`.
pub fn homogenize_twisted<F: Field>(f: &MPoly<F>, chart: usize, d: u32) -> Result<HomogeneousPoly<F>> {
    let n = f.nvars();
    if chart > n {
        return Err(Error::IndexOutOfRange { index: chart, max: n });
    }
    let field = f.field();
    let mut out = MPoly::with_vars(field, projective_vars(n));
    for (m, c) in f.terms() {
        let deg: u32 = m.iter().sum();
        if deg > d {
            return Err(Error::NotHomogeneous(format!("affine term of degree {deg} exceeds {d}")));
        }
        let mut e = vec![0u32; n + 1];
        let mut k = 0;
        let mut coeff = c.clone();
        for (j, slot) in e.iter_mut().enumerate() {
            if j == chart {
                continue;
            }
            *slot = m[k];
            if j == 0 && chart % 2 == 1 && m[k] % 2 == 1 {
                coeff = field.neg(&coeff);
            }
            k += 1;
        }
        e[chart] = d - deg;
        out.add_term(e, coeff);
    }
    HomogeneousPoly::new(out)
}

/// Chart of a projective point: the lowest index with a nonzero coordinate.
pub fn chart_of<F: Field>(field: &F, point: &[F::Elem]) -> Result<usize> {
    point.iter().position(|c| !field.is_zero(c)).ok_or(Error::ZeroInput("projective point".into()))
}

/// Twisted chart coordinates ((-1)^l p0/pl, ..., pj/pl, ...) with index l skipped.
pub fn chart_coordinates<F: Field>(field: &F, point: &[F::Elem], chart: usize) -> Result<Vec<F::Elem>> {
    let pl = point.get(chart).ok_or(Error::IndexOutOfRange { index: chart, max: point.len() - 1 })?;
    let inv = field.inv(pl).ok_or(Error::ChartMismatch(format!("coordinate x{chart} vanishes")))?;
    Ok((0..point.len())
        .filter(|&j| j != chart)
        .map(|j| {
            let u = field.mul(&point[j], &inv);
            if j == 0 && chart % 2 == 1 {
                field.neg(&u)
            } else {
                u
            }
        })
        .collect())
}

/// Projective point with x_l = 1 from twisted chart coordinates.
pub fn from_chart_coordinates<F: Field>(field: &F, coords: &[F::Elem], chart: usize) -> Vec<F::Elem> {
    let n = coords.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut k = 0;
    for j in 0..=n {
        if j == chart {
            out.push(field.one());
            continue;
        }
        let u = coords[k].clone();
        out.push(if j == 0 && chart % 2 == 1 { field.neg(&u) } else { u });
        k += 1;
    }
    out
}

/// Gradient of `f` at a point whose coordinates live in `target`.
pub fn gradient_in<F: Field, G: Field>(
    f: &MPoly<F>,
    target: &G,
    embed: &impl Fn(&F::Elem) -> G::Elem,
    point: &[G::Elem],
) -> Vec<G::Elem> {
    (0..f.nvars()).map(|j| f.partial(j).eval_in(target, embed, point)).collect()
}

pub fn gradient<F: Field>(f: &MPoly<F>, point: &[F::Elem]) -> Vec<F::Elem> {
    gradient_in(f, f.field(), &|c: &F::Elem| c.clone(), point)
}

/// det(d f_i / d u_j) at a point with coordinates in `target`.
pub fn jacobian_det_in<F: Field, G: Field>(
    fs: &[MPoly<F>],
    target: &G,
    embed: &impl Fn(&F::Elem) -> G::Elem,
    point: &[G::Elem],
) -> Result<G::Elem> {
    let n = fs.len();
    if fs.iter().any(|f| f.nvars() != n) || point.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} polynomials need {n} variables and a point of dimension {n}"
        )));
    }
    let rows: Vec<Vec<G::Elem>> = fs.iter().map(|f| gradient_in(f, target, embed, point)).collect();
    Ok(determinant(target, rows))
}

pub fn jacobian_det<F: Field>(fs: &[MPoly<F>], point: &[F::Elem]) -> Result<F::Elem> {
    let field = fs.first().ok_or(Error::DimensionMismatch("empty system".into()))?.field().clone();
    jacobian_det_in(fs, &field, &|c: &F::Elem| c.clone(), point)
}

/// Jacobian at a point with coordinates in an extension of the coefficient field.
pub fn jacobian_det_ext<F: Field>(fs: &[MPoly<F>], ext: &ExtensionField<F>, point: &[ExtElem<F>]) -> Result<ExtElem<F>> {
    jacobian_det_in(fs, ext, &|c: &F::Elem| ext.embed(c), point)
}

/// Signed volume of the parallelepiped spanned by n vectors in k^n.
pub fn cross_product_volume<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Result<F::Elem> {
    let n = vectors.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!("{n} vectors must have length {n}")));
    }
    Ok(determinant(field, vectors.to_vec()))
}

/// Relative orientability of O(d_1) + ... + O(d_n) on P^n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientabilityReport {
    #[serde(rename = "N")]
    pub n_twist: i64,
    pub orientable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor_note: Option<String>,
}

pub fn orientability(n: usize, degrees: &[u32]) -> OrientabilityReport {
    let n_twist = degrees.iter().map(|&d| d as i64).sum::<i64>() - n as i64 - 1;
    let orientable = n_twist.rem_euclid(2) == 0;
    OrientabilityReport {
        n_twist,
        orientable,
        divisor_note: (!orientable)
            .then(|| "relatively orientable only relative to D = {x0 = 0}; no point may lie on D".to_string()),
    }
}
