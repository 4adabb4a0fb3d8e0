//! Local A^1-degrees: trace forms at simple zeros, the closed form for a x^d,
//! and the power-series reduction for non-transverse plane-curve points.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionField, Field};
use crate::geometry::jacobian_det_ext;
use crate::gw::{gram_diagonalize, trace_form, GwClassify, GwElement};
use crate::poly::{binomial, MPoly};
use crate::series::{compose_bivariate, hensel_series_root, TruncatedSeries};

/// Doublings of the series precision before giving up.
const MAX_DOUBLINGS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TransverseJacobian,
    Series,
    ClosedForm,
}

/// deg_p over the base field together with how it was obtained.
#[derive(Debug, Clone)]
pub struct LocalDegreeResult<F: Field> {
    pub degree: GwElement<F>,
    /// Intersection multiplicity; equals rank(degree).
    pub multiplicity: usize,
    /// Leading coefficient a_n of f(x, G(x)) (series path, n odd or even), printed in the residue field.
    pub a_n: Option<String>,
    pub method: Method,
    /// Set when the series path ran in positive characteristic.
    pub char_warning: bool,
    /// u in k(p) with degree = m H + Tr<u>: the Jacobian at simple zeros,
    /// the normalized a_n for odd n. Filled in by the k(p)-aware entry points.
    pub odd_unit: Option<ExtElem<F>>,
}

impl<F: Field> LocalDegreeResult<F> {
    pub fn to_json(&self) -> Result<Value>
    where
        F: GwClassify,
    {
        let mut v = json!({
            "method": self.method,
            "n": self.multiplicity,
            "degree": self.degree.to_json()?,
        });
        if let Some(a) = &self.a_n {
            v["a_n"] = json!(a);
        }
        if self.char_warning {
            v["char_warning"] = json!(true);
        }
        Ok(v)
    }
}

/// G, f(x, G(x)) and its leading term a_n x^n.
#[derive(Debug, Clone)]
pub struct SeriesReduction<F: Field> {
    pub g_series: TruncatedSeries<F>,
    pub composed: TruncatedSeries<F>,
    pub n: usize,
    pub a_n: F::Elem,
}

/// Tr_{k(p)/k} <J(p)> at a simple zero with coordinates in `ext`.
pub fn local_degree_transverse<F: Field>(
    fs: &[MPoly<F>],
    ext: &ExtensionField<F>,
    point: &[ExtElem<F>],
) -> Result<LocalDegreeResult<F>> {
    for f in fs {
        let v = f.eval_in(ext, |c| ext.embed(c), point);
        if !ext.is_zero(&v) {
            return Err(Error::ChartMismatch(format!("{f} does not vanish at the point")));
        }
    }
    let j = jacobian_det_ext(fs, ext, point)?;
    if ext.is_zero(&j) {
        return Err(Error::ZeroJacobian);
    }
    Ok(LocalDegreeResult {
        degree: trace_form(ext, &j)?,
        multiplicity: ext.degree(),
        a_n: None,
        method: Method::TransverseJacobian,
        char_warning: false,
        odd_unit: Some(j),
    })
}

/// deg_0(a x^d): ((d-1)/2) H + <a> for d odd, (d/2) H for d even.
pub fn local_degree_monomial<F: Field>(field: &F, a: &F::Elem, d: usize) -> Result<GwElement<F>> {
    if field.is_zero(a) {
        return Err(Error::ZeroCoefficient);
    }
    if d == 0 {
        return Err(Error::ZeroInput("monomial degree".into()));
    }
    let h = GwElement::hyperbolic_multiple(field, d / 2);
    if d % 2 == 1 {
        h.add(&GwElement::unit(field, a.clone())?)
    } else {
        Ok(h)
    }
}

/// Diagonalized n x n Hankel form with a_n on the antidiagonal, where
/// a_n x^n is the leading term of `series`.
pub fn ss_hankel_oracle<F: Field>(series: &TruncatedSeries<F>) -> Result<GwElement<F>> {
    let field = series.field();
    let n = series.order().ok_or(Error::ZeroUnit)?;
    if n == 0 {
        return Err(Error::ZeroInput("Hankel oracle needs a zero of order >= 1".into()));
    }
    let a = series.coeff(n);
    let m: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i + j == n - 1 { a.clone() } else { field.zero() }).collect())
        .collect();
    gram_diagonalize(field, &m)
}

/// [x^m] G(x)^j by summing multinomial terms over t_1 + ... + t_m = j with
/// sum u t_u = m (G_0 = 0, so t_0 never contributes).
fn power_coefficient<F: Field>(field: &F, g: &[F::Elem], j: usize, m: usize) -> F::Elem {
    if j == 0 {
        return if m == 0 { field.one() } else { field.zero() };
    }
    // choose counts t_u for u = 1..=m recursively
    fn walk<F: Field>(
        field: &F,
        g: &[F::Elem],
        u: usize,
        parts_left: usize,
        weight_left: usize,
        coeff: BigInt,
        prod: F::Elem,
        acc: &mut F::Elem,
    ) {
        if parts_left == 0 {
            if weight_left == 0 {
                let term = field.mul(&field.from_bigint(&coeff), &prod);
                *acc = field.add(acc, &term);
            }
            return;
        }
        if u > weight_left || u >= g.len() {
            return;
        }
        // t_u copies of G_u; remaining parts must each weigh at least u + 1
        let mut p = prod.clone();
        for t in 0..=parts_left.min(weight_left / u) {
            if t > 0 {
                p = field.mul(&p, &g[u]);
                if field.is_zero(&p) {
                    break;
                }
            }
            let c = &coeff * BigInt::from(binomial(parts_left, t));
            walk(field, g, u + 1, parts_left - t, weight_left - t * u, c, p.clone(), acc);
        }
    }
    let mut acc = field.zero();
    walk(field, g, 1, j, m, BigInt::from(1), field.one(), &mut acc);
    acc
}

/// a_n = sum_{i+j<=n} f_{i,j} [x^(n-i)] G^j, the x^n coefficient of f(x, G(x)).
pub fn a_n_recursive<F: Field>(f: &MPoly<F>, g_series: &TruncatedSeries<F>, n: usize) -> Result<F::Elem> {
    if g_series.precision() < n {
        return Err(Error::InsufficientPrecision { need: n, have: g_series.precision() });
    }
    let field = f.field();
    let g = &g_series.coeffs()[..=n];
    let mut acc = field.zero();
    for (m, c) in f.terms() {
        let (i, j) = (m[0] as usize, m[1] as usize);
        if i + j > n {
            continue;
        }
        let t = field.mul(c, &power_coefficient(field, g, j, n - i));
        acc = field.add(&acc, &t);
    }
    Ok(acc)
}

/// Hensel root of g and leading term of f(x, G(x)); doubles the precision
/// until a nonzero coefficient appears.
pub fn series_reduction<F: Field>(f: &MPoly<F>, g: &MPoly<F>, start: usize) -> Result<SeriesReduction<F>> {
    let mut prec = start.max(1);
    for _ in 0..=MAX_DOUBLINGS {
        let g_series = hensel_series_root(g, prec)?;
        let composed = compose_bivariate(f, &g_series);
        if let Some(n) = composed.order() {
            if n == 0 {
                return Err(Error::ZeroInput("f does not vanish at the origin".into()));
            }
            let a_n = composed.coeff(n);
            return Ok(SeriesReduction { g_series, composed, n, a_n });
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted)
}

fn swap_xy<F: Field>(p: &MPoly<F>) -> MPoly<F> {
    let names: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    p.relabel(&names, &[1, 0])
}

/// deg_0(f, g) over the field of the coefficients for plane curves through
/// the origin. When g_y(0,0) = 0 the roles of f and g, or of x and y, are
/// exchanged; each exchange contributes a factor <-1>.
pub fn local_degree_series<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> Result<LocalDegreeResult<F>> {
    let (degree, red) = series_degree(f, g)?;
    let field = f.field();
    Ok(LocalDegreeResult {
        multiplicity: degree.rank(),
        degree,
        a_n: Some(field.format(&red.a_n)),
        method: Method::Series,
        char_warning: field.characteristic() != 0,
        odd_unit: None,
    })
}

/// The degree over the coefficient field plus the reduction that produced it.
pub fn series_degree<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> Result<(GwElement<F>, SeriesReduction<F>)> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::DimensionMismatch("series path needs two bivariate polynomials".into()));
    }
    let field = f.field();
    let origin = [field.zero(), field.zero()];
    for p in [f, g] {
        if !field.is_zero(&p.eval(&origin)) {
            return Err(Error::NotHenselian(format!("{p} does not vanish at the origin")));
        }
    }
    let d = |p: &MPoly<F>, var: usize| p.partial(var).eval(&origin);
    let minus_one = field.neg(&field.one());
    let (ff, gg, sign) = if !field.is_zero(&d(g, 1)) {
        (f.clone(), g.clone(), false)
    } else if !field.is_zero(&d(f, 1)) {
        (g.clone(), f.clone(), true)
    } else if !field.is_zero(&d(g, 0)) {
        (swap_xy(f), swap_xy(g), true)
    } else if !field.is_zero(&d(f, 0)) {
        (swap_xy(g), swap_xy(f), false)
    } else {
        return Err(Error::NotHenselian("both curves are singular at the point".into()));
    };
    let gy0 = d(&gg, 1);
    let start = (ff.total_degree().unwrap_or(1) * gg.total_degree().unwrap_or(1)) as usize + 1;
    let red = series_reduction(&ff, &gg, start)?;
    let mut degree = local_degree_monomial(field, &red.a_n, red.n)?.scale(&gy0)?;
    if sign {
        degree = degree.scale(&minus_one)?;
    }
    Ok((degree, red))
}

/// Shifts every polynomial so that `point` moves to the origin.
pub fn translate_to_origin<F: Field>(polys: &[MPoly<F>], point: &[F::Elem]) -> Result<Vec<MPoly<F>>> {
    polys
        .iter()
        .map(|p| {
            if p.nvars() != point.len() {
                return Err(Error::DimensionMismatch(format!(
                    "point has {} coordinates, polynomial has {} variables",
                    point.len(),
                    p.nvars()
                )));
            }
            let images: Vec<MPoly<F>> =
                (0..p.nvars()).map(|i| p.var_like(i).add(&p.constant_like(point[i].clone()))).collect();
            Ok(p.substitute(&images))
        })
        .collect()
}

/// [`translate_to_origin`] for a point given in an extension; all
/// coordinates must lie in the base field.
pub fn translate_to_origin_ext<F: Field>(
    polys: &[MPoly<F>],
    ext: &ExtensionField<F>,
    point: &[ExtElem<F>],
) -> Result<Vec<MPoly<F>>> {
    let base: Option<Vec<F::Elem>> = point.iter().map(|c| ext.as_base(c)).collect();
    translate_to_origin(polys, &base.ok_or(Error::NonRationalPoint)?)
}

/// Local degree of two plane curves at a closed point with residue field
/// `ext`. Simple zeros use the Jacobian; otherwise the pair is base changed to
/// k(p), translated, reduced by power series, and the result is traced down:
/// floor(n/2) [k(p):k] H + Tr<c a_n> (n odd).
pub fn local_degree_plane<F: Field>(
    f: &MPoly<F>,
    g: &MPoly<F>,
    ext: &ExtensionField<F>,
    point: &[ExtElem<F>],
) -> Result<LocalDegreeResult<F>> {
    match local_degree_transverse(&[f.clone(), g.clone()], ext, point) {
        Err(Error::ZeroJacobian) => {}
        other => return other,
    }
    let base = ext.base();
    let k = ext.degree();
    if k == 1 {
        let coords: Vec<F::Elem> = point.iter().map(|c| ext.as_base(c).expect("degree one")).collect();
        let moved = translate_to_origin(&[f.clone(), g.clone()], &coords)?;
        let mut r = local_degree_series(&moved[0], &moved[1])?;
        if r.multiplicity % 2 == 1 {
            r.odd_unit = r.degree.diag().last().map(|u| ext.embed(u));
        }
        return Ok(r);
    }
    let lift = |p: &MPoly<F>| p.map_coeffs(ext, |c| ext.embed(c));
    let moved = translate_to_origin(&[lift(f), lift(g)], point)?;
    let (over_k_p, red) = series_degree(&moved[0], &moved[1])
        .map_err(|e| Error::NonTransverseNonRational(e.to_string()))?;
    let mut degree = GwElement::hyperbolic_multiple(base, (red.n / 2) * k);
    let mut odd_unit = None;
    if red.n % 2 == 1 {
        // the odd part of over_k_p is the single entry not paired into H
        let unit = over_k_p.diag().last().cloned().ok_or(Error::Internal("empty series degree".into()))?;
        degree = degree.add(&trace_form(ext, &unit)?)?;
        odd_unit = Some(unit);
    }
    Ok(LocalDegreeResult {
        multiplicity: degree.rank(),
        degree,
        a_n: Some(ext.format(&red.a_n)),
        method: Method::Series,
        char_warning: base.characteristic() != 0,
        odd_unit,
    })
}
