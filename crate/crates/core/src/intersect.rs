//! Intersection points of two plane projective curves over Q or F_p.
//!
//! The pair is moved by a unimodular projective transform until every
//! intersection is affine in chart 0 and distinct points have distinct
//! x-coordinates. Then Res_y(f, g) is factored; each irreducible factor m(x)
//! gives one closed point with residue field k[a]/(m) and y-coordinate read
//! off the linear gcd of f(a, y) and g(a, y).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{CheckIrreducible, ExtElem, ExtensionField, Field};
use crate::geometry::{chart_coordinates, chart_of, dehomogenize_twisted, jacobian_det_ext, HomogeneousPoly};
use crate::localdeg::series_degree;
use crate::poly::{resultant, Factorize, MPoly, UPoly};

/// Transforms tried at least this many times before giving up.
const MIN_ATTEMPTS: usize = 32;

/// Two plane curves F, G over a common base field.
#[derive(Clone, Debug)]
pub struct CurvePair<F: Field> {
    pub f: HomogeneousPoly<F>,
    pub g: HomogeneousPoly<F>,
}

impl<F: Field> CurvePair<F> {
    pub fn new(f: HomogeneousPoly<F>, g: HomogeneousPoly<F>) -> Result<Self> {
        if f.n() != 2 || g.n() != 2 {
            return Err(Error::DimensionMismatch("curve pairs live on P^2".into()));
        }
        if f.field() != g.field() {
            return Err(Error::MismatchedField(f.field().tag().to_string(), g.field().tag().to_string()));
        }
        Ok(CurvePair { f, g })
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn degrees(&self) -> (u32, u32) {
        (self.f.degree(), self.g.degree())
    }

    /// Twisted dehomogenizations of F and G in chart `chart`.
    pub fn chart_polys(&self, chart: usize) -> Result<[MPoly<F>; 2]> {
        Ok([dehomogenize_twisted(&self.f, chart)?, dehomogenize_twisted(&self.g, chart)?])
    }

    fn transform(&self, s: &[Vec<F::Elem>]) -> Result<Self> {
        CurvePair::new(self.f.linear_transform(s)?, self.g.linear_transform(s)?)
    }
}

/// A closed point of F = G = 0.
#[derive(Clone, Debug)]
pub struct IntersectionPoint<F: Field> {
    pub chart: usize,
    pub residue_field: ExtensionField<F>,
    /// Twisted chart coordinates in the residue field.
    pub coords: Vec<ExtElem<F>>,
    /// Homogeneous coordinates normalized so that x_chart = 1.
    pub projective: Vec<ExtElem<F>>,
    /// dim_k of the local ring; includes the factor [k(p):k].
    pub multiplicity: usize,
    pub transverse: bool,
    pub on_divisor_x0: bool,
}

impl<F: Field> IntersectionPoint<F> {
    pub fn residue_degree(&self) -> usize {
        self.residue_field.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.residue_degree() == 1
    }

    /// Chart coordinates in the base field for rational points.
    pub fn rational_coords(&self) -> Option<Vec<F::Elem>> {
        self.coords.iter().map(|c| self.residue_field.as_base(c)).collect()
    }

    pub fn min_poly_text(&self) -> String {
        self.residue_field.minimal_poly().format_in("a")
    }

    pub fn coord_text(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.residue_field.format_with(c, "a")).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chart": self.chart,
            "min_poly": self.min_poly_text(),
            "coords": self.coord_text(),
            "multiplicity": self.multiplicity,
            "transverse": self.transverse,
            "on_divisor_x0": self.on_divisor_x0,
        })
    }

    fn sort_key(&self) -> (usize, usize, Vec<String>, String) {
        (self.chart, self.residue_degree(), self.coord_text(), self.min_poly_text())
    }
}

/// The accepted coordinate change S (points map back by x = S x') and the
/// transformed pair.
#[derive(Clone, Debug)]
pub struct Normalized<F: Field> {
    pub transform: Vec<Vec<F::Elem>>,
    pub pair: CurvePair<F>,
    /// Factors m(x) of Res_y with exponents, and the y-coordinate in k[a]/(m).
    solutions: Vec<Solution<F>>,
}

#[derive(Clone, Debug)]
struct Solution<F: Field> {
    field: ExtensionField<F>,
    y: ExtElem<F>,
    exponent: usize,
}

fn identity<F: Field>(field: &F) -> Vec<Vec<F::Elem>> {
    (0..3).map(|i| (0..3).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

/// Attempt 0 is the identity; later attempts draw [[1,a,b],[0,1,c],[0,0,1]].
fn candidate<F: Field>(field: &F, rng: &mut ChaCha8Rng, attempt: usize) -> Vec<Vec<F::Elem>> {
    let mut s = identity(field);
    if attempt > 0 {
        let bound = 2 + attempt as i64 / 4;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            s[i][j] = field.from_i64(rng.gen_range(-bound..=bound));
        }
    }
    s
}

fn max_attempts(d: (u32, u32)) -> usize {
    (2 * d.0 as usize * d.1 as usize).max(MIN_ATTEMPTS)
}

/// f(a, y) in k(a)[y] for f bivariate in (x, y).
fn specialize_x<F: Field>(f: &MPoly<F>, ext: &ExtensionField<F>, a: &ExtElem<F>) -> UPoly<ExtensionField<F>> {
    let coeffs = f
        .coefficients_in(1)
        .iter()
        .map(|c| c.eval_in(ext, |b| ext.embed(b), &[a.clone(), ext.zero()]))
        .collect();
    UPoly::new(ext, coeffs)
}

/// Res_y(f, g), including the case where one side is free of y.
fn resultant_y<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> Result<MPoly<F>> {
    match (f.degree_in(1).unwrap_or(0), g.degree_in(1).unwrap_or(0)) {
        (0, n) => Ok(f.pow(n)),
        (m, 0) => Ok(g.pow(m)),
        _ => resultant(f, g, 1),
    }
}

/// Solves the transformed pair, or `None` if S is not generic enough.
fn try_transform<F: Factorize + CheckIrreducible>(pair: &CurvePair<F>, seed: u64) -> Result<Option<Vec<Solution<F>>>> {
    let field = pair.field();
    let (df, dg) = pair.degrees();
    // Projecting from [0:0:1] is finite on one curve as soon as that curve
    // misses the point; ord Res_y then sums the multiplicities on each fibre.
    let top = [field.zero(), field.zero(), field.one()];
    if field.is_zero(&pair.f.eval(&top)) && field.is_zero(&pair.g.eval(&top)) {
        return Ok(None);
    }
    let [f, g] = pair.chart_polys(0)?;
    let r = resultant_y(&f, &g)?;
    if r.is_zero() {
        return Err(Error::CommonComponent);
    }
    let r = r.to_univariate(0)?;
    if r.degree() != Some((df * dg) as usize) {
        return Ok(None);
    }
    let fact = field.factor_seeded(&r, seed)?;
    let mut out = Vec::with_capacity(fact.factors.len());
    for (m, e) in &fact.factors {
        let ext = ExtensionField::new(m.clone())?;
        let a = ext.generator();
        let h = UPoly::gcd(&specialize_x(&f, &ext, &a), &specialize_x(&g, &ext, &a));
        if h.degree() != Some(1) {
            return Ok(None);
        }
        let y = ext.neg(&h.coeff(0));
        out.push(Solution { field: ext, y, exponent: *e });
    }
    Ok(Some(out))
}

/// Searches for a generic coordinate change, starting from the identity.
pub fn shear_normalize<F: Factorize + CheckIrreducible>(pair: &CurvePair<F>, seed: u64) -> Result<Normalized<F>> {
    let field = pair.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = max_attempts(pair.degrees());
    for attempt in 0..attempts {
        let s = candidate(field, &mut rng, attempt);
        let moved = pair.transform(&s)?;
        if let Some(solutions) = try_transform(&moved, seed)? {
            return Ok(Normalized { transform: s, pair: moved, solutions });
        }
    }
    Err(Error::ShearExhausted(attempts))
}

/// All intersection points, sorted by (chart, [k(p):k], coordinates, minimal polynomial).
pub fn find_intersections<F: Factorize + CheckIrreducible>(
    pair: &CurvePair<F>,
    seed: u64,
) -> Result<Vec<IntersectionPoint<F>>> {
    let norm = shear_normalize(pair, seed)?;
    let s = &norm.transform;
    let mut points = Vec::with_capacity(norm.solutions.len());
    for sol in &norm.solutions {
        let ext = &sol.field;
        let local = [ext.one(), ext.generator(), sol.y.clone()];
        // x = S x'
        let x: Vec<ExtElem<F>> = (0..3)
            .map(|i| {
                (0..3).fold(ext.zero(), |acc, j| ext.add(&acc, &ext.mul(&ext.embed(&s[i][j]), &local[j])))
            })
            .collect();
        points.push(make_point(pair, ext, &x, sol.exponent * ext.degree())?);
    }
    points.sort_by_key(|p| p.sort_key());
    audit(pair, &points)?;
    Ok(points)
}

fn make_point<F: Field>(
    pair: &CurvePair<F>,
    ext: &ExtensionField<F>,
    x: &[ExtElem<F>],
    multiplicity: usize,
) -> Result<IntersectionPoint<F>> {
    for h in [&pair.f, &pair.g] {
        if !ext.is_zero(&h.poly().eval_in(ext, |c| ext.embed(c), x)) {
            return Err(Error::Internal(format!("{} does not vanish at a computed point", h.poly())));
        }
    }
    let chart = chart_of(ext, x)?;
    let coords = chart_coordinates(ext, x, chart)?;
    let inv = ext.inv(&x[chart]).ok_or(Error::DivisionByZero)?;
    let projective = x.iter().map(|c| ext.mul(c, &inv)).collect();
    let j = jacobian_det_ext(&pair.chart_polys(chart)?, ext, &coords)?;
    let transverse = !ext.is_zero(&j);
    if transverse != (multiplicity == ext.degree()) {
        return Err(Error::Internal(format!(
            "transversality mismatch: J = {}, multiplicity {multiplicity}, [k(p):k] = {}",
            ext.format(&j),
            ext.degree()
        )));
    }
    Ok(IntersectionPoint {
        chart,
        residue_field: ext.clone(),
        coords,
        projective,
        multiplicity,
        transverse,
        on_divisor_x0: ext.is_zero(&x[0]),
    })
}

fn audit<F: Field>(pair: &CurvePair<F>, points: &[IntersectionPoint<F>]) -> Result<()> {
    let (df, dg) = pair.degrees();
    let found: usize = points.iter().map(|p| p.multiplicity).sum();
    let expected = (df * dg) as usize;
    if found != expected {
        return Err(Error::IncompletePointSet { found, expected });
    }
    Ok(())
}

/// Order of f(x, G(x)) at a rational point, in its chart.
pub fn multiplicity_at<F: Field>(pair: &CurvePair<F>, point: &IntersectionPoint<F>) -> Result<usize> {
    let coords = point.rational_coords().ok_or(Error::NonRationalPoint)?;
    let [f, g] = pair.chart_polys(point.chart)?;
    let moved = crate::localdeg::translate_to_origin(&[f, g], &coords)?;
    let (_, red) = series_degree(&moved[0], &moved[1])?;
    Ok(red.n)
}

/// J_chart(p) != 0 in k(p).
pub fn is_transverse<F: Field>(pair: &CurvePair<F>, point: &IntersectionPoint<F>) -> Result<bool> {
    let ext = &point.residue_field;
    let j = jacobian_det_ext(&pair.chart_polys(point.chart)?, ext, &point.coords)?;
    Ok(!ext.is_zero(&j))
}
