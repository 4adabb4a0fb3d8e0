//! Euler numbers of O(d_1) + ... + O(d_n) on P^n and the arithmetic
//! consequences over R, F_q, Q and C((t)).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{factor_integer, is_prime_u64, valuation};
use crate::error::{Error, Result};
use crate::field::{
    CheckIrreducible, ExtElem, ExtensionField, Field, PrimeField, Rational, RationalFunction, RationalFunctions,
    Rationals,
};
use crate::geometry::{jacobian_det_ext, orientability, OrientabilityReport};
use crate::gw::{
    ct_classify, discriminant, invariants, signature, trace_form, witt_residue_2, witt_residue_p, CtClass, Disc,
    GwClassify, GwElement, WittFpClass,
};
use crate::intersect::{find_intersections, CurvePair, IntersectionPoint};
use crate::localdeg::{local_degree_plane, LocalDegreeResult};
use crate::poly::{Factorize, UPoly};
use crate::sturm::{approximate_root, isolate_real_roots, sign_at_root};

pub const SCHEMA_VERSION: u32 = 1;

/// (d_1 ... d_n / 2) H; requires sum d_i = n + 1 mod 2.
pub fn expected_euler<F: Field>(field: &F, degrees: &[u32]) -> Result<GwElement<F>> {
    let report = orientability(degrees.len(), degrees);
    if !report.orientable {
        return Err(Error::NotOrientable { n_twist: report.n_twist });
    }
    let product: usize = degrees.iter().map(|&d| d as usize).product();
    Ok(GwElement::hyperbolic_multiple(field, product / 2))
}

/// Sum of local degrees; the multiplicities must add up to `expected_total`.
pub fn euler_number<F: Field>(
    field: &F,
    locals: &[&LocalDegreeResult<F>],
    expected_total: usize,
) -> Result<GwElement<F>> {
    let found: usize = locals.iter().map(|l| l.multiplicity).sum();
    if found != expected_total {
        return Err(Error::IncompletePointSet { found, expected: expected_total });
    }
    GwElement::sum(field, locals.iter().map(|l| &l.degree))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// An intersection point with its local degree.
#[derive(Debug, Clone)]
pub struct PointDegree<F: Field> {
    pub point: IntersectionPoint<F>,
    pub local: LocalDegreeResult<F>,
}

impl<F: GwClassify> PointDegree<F> {
    pub fn to_json(&self) -> Result<Value> {
        let mut v = self.point.to_json();
        v["local_degree"] = self.local.to_json()?;
        Ok(v)
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport<F: Field> {
    pub orientability: OrientabilityReport,
    pub degrees: Vec<u32>,
    pub points: Vec<PointDegree<F>>,
    pub total: GwElement<F>,
    /// Absent when the bundle is only orientable relative to x0 = 0.
    pub expected: Option<GwElement<F>>,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl<F: GwClassify> VerificationReport<F> {
    pub fn passed(&self) -> bool {
        self.expected.is_some() && self.verdicts.values().all(|v| *v != Verdict::Fail)
    }

    pub fn to_json(&self) -> Result<Value> {
        let points: Result<Vec<Value>> = self.points.iter().map(PointDegree::to_json).collect();
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "field": self.total.field().tag().to_string(),
            "degrees": self.degrees,
            "orientability": self.orientability,
            "points": points?,
            "total": self.total.to_json()?,
            "total_text": self.total.format_hyperbolic(),
            "verdicts": self.verdicts,
            "pass": self.passed(),
        });
        if let Some(e) = &self.expected {
            v["expected"] = e.to_json()?;
            v["expected_text"] = json!(e.format_hyperbolic());
        }
        Ok(v)
    }
}

/// Intersection points of the pair with their local degrees.
pub fn local_degrees<F: Factorize + CheckIrreducible>(pair: &CurvePair<F>, seed: u64) -> Result<Vec<PointDegree<F>>> {
    let points = find_intersections(pair, seed)?;
    let mut out = Vec::with_capacity(points.len());
    for point in points {
        let [f, g] = pair.chart_polys(point.chart)?;
        let local = local_degree_plane(&f, &g, &point.residue_field, &point.coords)?;
        if local.degree.rank() != point.multiplicity {
            return Err(Error::Internal(format!(
                "rank {} of the local degree differs from multiplicity {}",
                local.degree.rank(),
                point.multiplicity
            )));
        }
        out.push(PointDegree { point, local });
    }
    Ok(out)
}

fn compare<F: GwClassify>(total: &GwElement<F>, expected: &GwElement<F>) -> Result<BTreeMap<String, Verdict>> {
    let a = invariants(total)?;
    let b = invariants(expected)?;
    let mut v = BTreeMap::new();
    v.insert("rank".to_string(), Verdict::of(a.rank == b.rank));
    v.insert(
        "signature".to_string(),
        match (a.signature, b.signature) {
            (Some(x), Some(y)) => Verdict::of(x == y),
            _ => Verdict::NotApplicable,
        },
    );
    v.insert("disc".to_string(), Verdict::of(a.disc == b.disc));
    v.insert(
        "d2".to_string(),
        match (a.d2, b.d2) {
            (Some(x), Some(y)) => Verdict::of(x == y),
            _ => Verdict::NotApplicable,
        },
    );
    v.insert(
        "dp".to_string(),
        match (&a.dp, &b.dp) {
            (Some(x), Some(y)) => Verdict::of(x == y),
            _ => Verdict::NotApplicable,
        },
    );
    v.insert("gw_equal".to_string(), Verdict::of(a == b));
    Ok(v)
}

/// Sum of local degrees against (d_F d_G / 2) H.
pub fn verify_main<F: Factorize + CheckIrreducible + GwClassify>(
    pair: &CurvePair<F>,
    seed: u64,
) -> Result<VerificationReport<F>> {
    let (df, dg) = pair.degrees();
    let orient = orientability(2, &[df, dg]);
    if !orient.orientable {
        return Err(Error::NotOrientable { n_twist: orient.n_twist });
    }
    let expected = expected_euler(pair.field(), &[df, dg])?;
    let points = local_degrees(pair, seed)?;
    let locals: Vec<_> = points.iter().map(|p| &p.local).collect();
    let total = euler_number(pair.field(), &locals, (df * dg) as usize)?;
    let verdicts = compare(&total, &expected)?;
    Ok(VerificationReport { orientability: orient, degrees: vec![df, dg], points, total, expected: Some(expected), verdicts })
}

/// Local degrees relative to D = {x0 = 0} when N is odd; no identity is asserted.
pub fn relative_report<F: Factorize + CheckIrreducible + GwClassify>(
    pair: &CurvePair<F>,
    seed: u64,
) -> Result<VerificationReport<F>> {
    let (df, dg) = pair.degrees();
    let orient = orientability(2, &[df, dg]);
    let points = local_degrees(pair, seed)?;
    if points.iter().any(|p| p.point.on_divisor_x0) {
        return Err(Error::PointOnDivisor);
    }
    let locals: Vec<_> = points.iter().map(|p| &p.local).collect();
    let total = euler_number(pair.field(), &locals, (df * dg) as usize)?;
    let verdicts = ["rank", "signature", "disc", "d2", "dp", "gw_equal"]
        .iter()
        .map(|k| (k.to_string(), Verdict::NotApplicable))
        .collect();
    Ok(VerificationReport { orientability: orient, degrees: vec![df, dg], points, total, expected: None, verdicts })
}

// ---------------------------------------------------------------- over R

/// Signature of a local degree; bounded by the rank.
pub fn crossing_sign(local: &LocalDegreeResult<Rationals>) -> Result<i64> {
    let s = signature(&local.degree)?;
    if s.unsigned_abs() as usize > local.degree.rank() {
        return Err(Error::Internal(format!("signature {s} exceeds rank {}", local.degree.rank())));
    }
    Ok(s)
}

/// A real point of a closed point, i.e. one real embedding of k(p).
#[derive(Debug, Clone, Serialize)]
pub struct RealCrossing {
    pub chart: usize,
    /// Approximate chart coordinates, for display only.
    pub approx: [f64; 2],
    /// Exact sign of the odd unit under this embedding; 0 for even-order contact.
    pub sign: i32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CrossingTally {
    pub positive: usize,
    pub negative: usize,
    /// Closed points without real embeddings plus real points of even contact order.
    pub zero_contribution: usize,
}

fn horner_f64(p: &UPoly<Rationals>, x: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// Real embeddings of k(p), each with its exact crossing sign.
pub fn real_crossings(pd: &PointDegree<Rationals>) -> Result<Vec<RealCrossing>> {
    let ext = &pd.point.residue_field;
    let m = ext.minimal_poly();
    let unit_poly = pd.local.odd_unit.as_ref().map(|u| ext.to_poly(u));
    let order_odd = (pd.local.multiplicity / ext.degree()) % 2 == 1;
    let mut out = Vec::new();
    for interval in isolate_real_roots(m) {
        let sign = match (&unit_poly, order_odd) {
            (Some(u), true) => sign_at_root(m, &interval, u),
            (None, true) => return Err(Error::Internal("odd contact order without a unit".into())),
            (_, false) => 0,
        };
        let a = approximate_root(m, &interval);
        let coord = |c: &ExtElem<Rationals>| horner_f64(&ext.to_poly(c), a);
        out.push(RealCrossing { chart: pd.point.chart, approx: [coord(&pd.point.coords[0]), coord(&pd.point.coords[1])], sign });
    }
    Ok(out)
}

/// Crossing signs per real point; cross-checked against the signatures.
pub fn tally_crossings(points: &[PointDegree<Rationals>]) -> Result<CrossingTally> {
    let mut t = CrossingTally::default();
    for pd in points {
        let crossings = real_crossings(pd)?;
        if crossings.is_empty() {
            t.zero_contribution += 1;
        }
        let mut sum = 0i64;
        for c in &crossings {
            match c.sign {
                1 => t.positive += 1,
                -1 => t.negative += 1,
                _ => t.zero_contribution += 1,
            }
            sum += c.sign as i64;
        }
        if sum != crossing_sign(&pd.local)? {
            return Err(Error::Internal("real crossing signs disagree with the signature".into()));
        }
    }
    Ok(t)
}

#[derive(Debug, Clone)]
pub struct RealReport {
    pub points: Vec<PointDegree<Rationals>>,
    pub crossings: Vec<RealCrossing>,
    pub tally: CrossingTally,
    pub verdict: Verdict,
}

impl RealReport {
    pub fn to_json(&self) -> Value {
        json!({
            "crossings": self.crossings,
            "tally": self.tally,
            "verdict": self.verdict,
        })
    }
}

/// Equal numbers of positive and negative real crossings.
pub fn verify_over_r(pair: &CurvePair<Rationals>, seed: u64) -> Result<RealReport> {
    let (df, dg) = pair.degrees();
    let orient = orientability(2, &[df, dg]);
    if !orient.orientable {
        return Err(Error::NotOrientable { n_twist: orient.n_twist });
    }
    let points = local_degrees(pair, seed)?;
    let tally = tally_crossings(&points)?;
    let mut crossings = Vec::new();
    for pd in &points {
        crossings.extend(real_crossings(pd)?);
    }
    Ok(RealReport { points, crossings, tally, verdict: Verdict::of(tally.positive == tally.negative) })
}

// ---------------------------------------------------------------- over F_q

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Positivity {
    Positive,
    Negative,
}

/// Positive iff J is a square in F_{q^b}^x (Euler's criterion in the extension).
pub fn fq_positivity(ext: &ExtensionField<PrimeField>, j: &ExtElem<PrimeField>) -> Result<Positivity> {
    if ext.is_zero(j) {
        return Err(Error::ZeroInput("positivity of zero".into()));
    }
    let square = ext.is_square_finite(j).expect("finite field");
    Ok(if square { Positivity::Positive } else { Positivity::Negative })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FqTally {
    pub positive_b_even: usize,
    pub positive_b_odd: usize,
    pub negative_b_even: usize,
    pub negative_b_odd: usize,
}

impl FqTally {
    pub fn record(&mut self, positivity: Positivity, b: usize) {
        match (positivity, b % 2 == 0) {
            (Positivity::Positive, true) => self.positive_b_even += 1,
            (Positivity::Positive, false) => self.positive_b_odd += 1,
            (Positivity::Negative, true) => self.negative_b_even += 1,
            (Positivity::Negative, false) => self.negative_b_odd += 1,
        }
    }

    /// #positive with b even + #negative with b odd, mod 2.
    pub fn parity(&self) -> usize {
        (self.positive_b_even + self.negative_b_odd) % 2
    }
}

/// Case (a) when d_1...d_n/2 is even or q = 1 mod 4: required parity 0; else 1.
pub fn fq_required_parity(q: u64, degree_product: u64) -> usize {
    if (degree_product / 2) % 2 == 0 || q % 4 == 1 {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone)]
pub struct FqReport {
    pub q: u64,
    pub points: Vec<PointDegree<PrimeField>>,
    pub positivity: Vec<Positivity>,
    pub tally: FqTally,
    pub case: char,
    pub required_parity: usize,
    pub verdict: Verdict,
    /// disc(total) equals disc((d_1 d_2 / 2) H).
    pub disc_check: Verdict,
}

impl FqReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "case": self.case.to_string(),
            "tally": self.tally,
            "parity": self.tally.parity(),
            "required_parity": self.required_parity,
            "positivity": self.positivity,
            "verdict": self.verdict,
            "disc_check": self.disc_check,
        })
    }
}

pub fn verify_over_fq(pair: &CurvePair<PrimeField>, seed: u64) -> Result<FqReport> {
    let (df, dg) = pair.degrees();
    let orient = orientability(2, &[df, dg]);
    if !orient.orientable {
        return Err(Error::NotOrientable { n_twist: orient.n_twist });
    }
    let field = pair.field();
    let q = field.modulus();
    let points = local_degrees(pair, seed)?;
    let mut tally = FqTally::default();
    let mut positivity = Vec::with_capacity(points.len());
    for pd in &points {
        if !pd.point.transverse {
            return Err(Error::NonTransverseOverFq);
        }
        let ext = &pd.point.residue_field;
        let j = jacobian_det_ext(&pair.chart_polys(pd.point.chart)?, ext, &pd.point.coords)?;
        let s = fq_positivity(ext, &j)?;
        tally.record(s, ext.degree());
        positivity.push(s);
    }
    let product = (df * dg) as u64;
    let required = fq_required_parity(q, product);
    let locals: Vec<_> = points.iter().map(|p| &p.local).collect();
    let total = euler_number(field, &locals, product as usize)?;
    let expected = expected_euler(field, &[df, dg])?;
    let disc_check = Verdict::of(discriminant(&total)? == discriminant(&expected)?);
    Ok(FqReport {
        q,
        points,
        positivity,
        tally,
        case: if required == 0 { 'a' } else { 'b' },
        required_parity: required,
        verdict: Verdict::of(tally.parity() == required),
        disc_check,
    })
}

// ---------------------------------------------------------------- over C((t))

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LaurentUnit {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "s")]
    S,
}

#[derive(Debug, Clone)]
pub struct LaurentTrace {
    pub m: usize,
    pub unit: LaurentUnit,
    pub form: GwElement<RationalFunctions>,
    pub classes: Vec<CtClass>,
    /// Counts of <1> and <t> among the diagonal entries.
    pub ones: usize,
    pub ts: usize,
    /// (m - 1) <t> + <1> for u = 1, m <t> for u = s.
    pub matches_closed_form: bool,
}

/// Tr_{E/C((t))} <u> for E = C((t))[s]/(s^m - t).
pub fn laurent_trace_form(m: usize, unit: LaurentUnit) -> Result<LaurentTrace> {
    if m == 0 {
        return Err(Error::ZeroInput("extension degree".into()));
    }
    let ct = RationalFunctions;
    let mut coeffs = vec![ct.zero(); m + 1];
    coeffs[0] = ct.neg(&RationalFunction::t());
    coeffs[m] = ct.one();
    let ext = ExtensionField::new(UPoly::new(&ct, coeffs))?;
    let u = match unit {
        LaurentUnit::One => ext.one(),
        LaurentUnit::S => ext.generator(),
    };
    let form = trace_form(&ext, &u)?;
    let classes: Vec<CtClass> = form.diag().iter().map(ct_classify).collect::<Result<_>>()?;
    let ones = classes.iter().filter(|c| **c == CtClass::One).count();
    let ts = classes.len() - ones;
    let expected = match unit {
        LaurentUnit::One => (1, m - 1),
        LaurentUnit::S => (0, m),
    };
    Ok(LaurentTrace { m, unit, form, classes, ones, ts, matches_closed_form: (ones, ts) == expected })
}

// ---------------------------------------------------------------- over Q

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QConditions {
    pub sign_sum: i64,
    pub d2_sum: u8,
    /// Nonzero residues at odd primes dividing some diagonal entry.
    pub residues: BTreeMap<u64, WittFpClass>,
    pub primes: Vec<u64>,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl QConditions {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| *v != Verdict::Fail)
    }

    pub fn to_json(&self) -> Value {
        let residues: BTreeMap<String, Value> = self.residues.iter().map(|(p, c)| (p.to_string(), c.to_json())).collect();
        json!({
            "sign_sum": self.sign_sum,
            "d2_sum": self.d2_sum,
            "primes": self.primes,
            "residues": residues,
            "verdicts": self.verdicts,
        })
    }
}

fn odd_primes_of(degrees: &[&GwElement<Rationals>]) -> Result<Vec<u64>> {
    let mut primes = Vec::new();
    for d in degrees {
        for a in d.diag() {
            for part in [a.numer(), a.denom()] {
                for (p, _) in factor_integer(part.magnitude())? {
                    let p = p.to_u64().ok_or_else(|| Error::FactorizationBudget(p.to_string()))?;
                    if p != 2 {
                        primes.push(p);
                    }
                }
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// The four conditions on a list of local degrees over Q: signatures sum to
/// 0, the 2-adic residues to 0 mod 2, and every odd residue vanishes in W(F_p).
pub fn q_conditions(degrees: &[&GwElement<Rationals>]) -> Result<QConditions> {
    let total = GwElement::sum(&Rationals, degrees.iter().copied())?;
    let sign_sum = signature(&total)?;
    let d2_sum = witt_residue_2(&total)?;
    let primes = odd_primes_of(degrees)?;
    let mut residues = BTreeMap::new();
    let (mut c_ok, mut d_ok) = (true, true);
    let (mut any_c, mut any_d) = (false, false);
    for &p in &primes {
        let r = witt_residue_p(&total, p)?;
        if p % 4 == 3 {
            any_c = true;
            c_ok &= r.is_zero();
        } else {
            any_d = true;
            d_ok &= r.is_zero();
        }
        if !r.is_zero() {
            residues.insert(p, r);
        }
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert("a_signature".to_string(), Verdict::of(sign_sum == 0));
    verdicts.insert("b_dyadic".to_string(), Verdict::of(d2_sum == 0));
    verdicts.insert("c_p_3_mod_4".to_string(), if any_c { Verdict::of(c_ok) } else { Verdict::Pass });
    verdicts.insert("d_p_1_mod_4".to_string(), if any_d { Verdict::of(d_ok) } else { Verdict::Pass });
    Ok(QConditions { sign_sum, d2_sum, residues, primes, verdicts })
}

pub fn verify_over_q(pair: &CurvePair<Rationals>, seed: u64) -> Result<(Vec<PointDegree<Rationals>>, QConditions)> {
    let (df, dg) = pair.degrees();
    let orient = orientability(2, &[df, dg]);
    if !orient.orientable {
        return Err(Error::NotOrientable { n_twist: orient.n_twist });
    }
    let points = local_degrees(pair, seed)?;
    let degrees: Vec<_> = points.iter().map(|p| &p.local.degree).collect();
    let cond = q_conditions(&degrees)?;
    Ok((points, cond))
}

/// Smallest odd prime dividing no numerator or denominator of the entries.
pub fn fresh_prime(degrees: &[&GwElement<Rationals>]) -> Result<u64> {
    let used = odd_primes_of(degrees)?;
    Ok((3u64..).step_by(2).find(|&p| is_prime_u64(p) && used.binary_search(&p).is_err()).expect("infinitely many primes"))
}

/// Negative control: multiplies the first entry of local degree `index` by a
/// prime that occurs nowhere else, creating a nonzero residue at that prime.
pub fn corrupt_local_degree(degrees: &[GwElement<Rationals>], index: usize) -> Result<Vec<GwElement<Rationals>>> {
    let refs: Vec<_> = degrees.iter().collect();
    let q = Rational::from_integer(BigInt::from(fresh_prime(&refs)?));
    let mut out = degrees.to_vec();
    let target = out.get(index).ok_or(Error::IndexOutOfRange { index, max: degrees.len().saturating_sub(1) })?;
    let mut diag = target.diag().to_vec();
    diag[0] = &diag[0] * &q;
    out[index] = GwElement::new(&Rationals, diag)?;
    Ok(out)
}

// ---------------------------------------------------------------- line and conic

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineConicReport {
    pub opposite_signs: bool,
    pub dyadic_parity_agrees: bool,
    /// Some prime divides J_s to an odd power but does not divide J_t.
    pub coprime_nonsquare_obstruction: bool,
    pub consistent: bool,
}

fn v2_parity(a: &Rational) -> i64 {
    (valuation(a.numer(), 2) as i64 - valuation(a.denom(), 2) as i64).rem_euclid(2)
}

/// Necessary conditions on the Jacobians J(s), J(t) at the two rational
/// intersection points of a line and a conic.
pub fn line_conic_constraints(js: &Rational, jt: &Rational) -> Result<LineConicReport> {
    if js.is_zero() || jt.is_zero() {
        return Err(Error::ZeroInput("line-conic Jacobian".into()));
    }
    let opposite_signs = js.is_positive() != jt.is_positive();
    let dyadic_parity_agrees = v2_parity(js) == v2_parity(jt);
    let mut obstruction = false;
    if js.is_integer() && jt.is_integer() {
        let (s, t) = (js.numer(), jt.numer());
        for (p, e) in factor_integer(s.magnitude())? {
            let p = BigInt::from(p);
            if e % 2 == 1 && !t.is_multiple_of(&p) {
                obstruction = true;
            }
        }
    }
    Ok(LineConicReport {
        opposite_signs,
        dyadic_parity_agrees,
        coprime_nonsquare_obstruction: obstruction,
        consistent: opposite_signs && dyadic_parity_agrees && !obstruction,
    })
}

/// Disc::Square(true) when (-1)^(d/2) is a square in F_q.
pub fn expected_fq_disc(q: u64, degree_product: u64) -> Disc {
    Disc::Square((degree_product / 2) % 2 == 0 || q % 4 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HomogeneousPoly;
    use crate::gw::gw_equal;
    use crate::poly::MPoly;

    fn hp<F: Field>(field: &F, terms: &[(i64, &[u32])]) -> HomogeneousPoly<F> {
        HomogeneousPoly::new(MPoly::from_i64_terms(field, &["x0", "x1", "x2"], terms)).unwrap()
    }

    fn conic<F: Field>(field: &F) -> HomogeneousPoly<F> {
        hp(field, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])])
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn expected_forms() {
        assert_eq!(expected_euler(&Rationals, &[1, 2]).unwrap().format_hyperbolic(), "H");
        assert_eq!(expected_euler(&Rationals, &[2, 3]).unwrap().format_hyperbolic(), "3·H");
        assert_eq!(expected_euler(&Rationals, &[2, 1, 1]).unwrap().rank(), 2);
        assert_eq!(expected_euler(&Rationals, &[2, 2]).unwrap_err(), Error::NotOrientable { n_twist: 1 });
    }

    #[test]
    fn conic_and_lines() {
        for sign in [-1, 1] {
            let line = hp(&Rationals, &[(1, &[0, 0, 1]), (sign, &[1, 0, 0])]);
            let report = verify_main(&CurvePair::new(conic(&Rationals), line).unwrap(), 0).unwrap();
            assert!(report.passed(), "{:?}", report.verdicts);
            assert!(gw_equal(&report.total, &GwElement::hyperbolic(&Rationals)).unwrap());
        }
    }

    #[test]
    fn not_orientable() {
        let other = hp(&Rationals, &[(1, &[0, 1, 1]), (-1, &[2, 0, 0])]);
        let pair = CurvePair::new(conic(&Rationals), other).unwrap();
        assert_eq!(verify_main(&pair, 0).unwrap_err(), Error::NotOrientable { n_twist: 1 });
    }

    #[test]
    fn conic_cubic_signs() {
        let cubic = hp(&Rationals, &[(1, &[2, 0, 1]), (-1, &[0, 3, 0])]);
        let circle = hp(&Rationals, &[(1, &[0, 2, 0]), (1, &[0, 0, 2]), (-2, &[2, 0, 0])]);
        let pair = CurvePair::new(cubic, circle).unwrap();
        let r = verify_over_r(&pair, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!((r.tally.positive, r.tally.negative), (1, 1));
        let report = verify_main(&pair, 0).unwrap();
        assert!(report.passed());
        assert_eq!(report.total.rank(), 6);
        let (_, cond) = verify_over_q(&pair, 0).unwrap();
        assert!(cond.passed(), "{cond:?}");
    }

    #[test]
    fn tangent_plus_line() {
        // conic against x2 (x2 - x0) (x2 + 2 x0): a tangent line, a secant
        // and a line meeting the conic only at non-real points
        let x2 = MPoly::from_i64_terms(&Rationals, &["x0", "x1", "x2"], &[(1, &[0, 0, 1])]);
        let secant = MPoly::from_i64_terms(&Rationals, &["x0", "x1", "x2"], &[(1, &[0, 0, 1]), (-1, &[1, 0, 0])]);
        let other = MPoly::from_i64_terms(&Rationals, &["x0", "x1", "x2"], &[(1, &[0, 0, 1]), (2, &[1, 0, 0])]);
        let g = HomogeneousPoly::new(x2.mul(&secant).mul(&other)).unwrap();
        let pair = CurvePair::new(conic(&Rationals), g).unwrap();
        let r = verify_over_r(&pair, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.tally, CrossingTally { positive: 1, negative: 1, zero_contribution: 2 });
        assert!(verify_main(&pair, 0).unwrap().passed());
    }

    #[test]
    fn positivity_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let e = ExtensionField::rational(&f5, 0);
        assert_eq!(fq_positivity(&e, &e.embed(&2)).unwrap(), Positivity::Negative);
        assert_eq!(fq_positivity(&e, &e.embed(&4)).unwrap(), Positivity::Positive);
        let f3 = PrimeField::new(3).unwrap();
        let f9 = ExtensionField::new(UPoly::from_i64s(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(fq_positivity(&f9, &f9.generator()).unwrap(), Positivity::Positive);
        assert!(fq_positivity(&f9, &f9.zero()).is_err());
    }

    #[test]
    fn fq_cases() {
        assert_eq!(fq_required_parity(5, 2), 0);
        assert_eq!(fq_required_parity(7, 2), 1);
        assert_eq!(fq_required_parity(7, 4), 0);
        for p in [5u64, 7] {
            let fp = PrimeField::new(p).unwrap();
            let line = hp(&fp, &[(1, &[0, 0, 1]), (-1, &[1, 0, 0])]);
            let r = verify_over_fq(&CurvePair::new(conic(&fp), line).unwrap(), 0).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.disc_check, Verdict::Pass);
        }
    }

    #[test]
    fn laurent_examples() {
        let t = laurent_trace_form(2, LaurentUnit::One).unwrap();
        assert_eq!((t.ones, t.ts), (1, 1));
        let t = laurent_trace_form(3, LaurentUnit::S).unwrap();
        assert_eq!((t.ones, t.ts), (0, 3));
        assert!(t.matches_closed_form);
        assert!(laurent_trace_form(1, LaurentUnit::One).unwrap().matches_closed_form);
    }

    #[test]
    fn line_conic_examples() {
        assert!(line_conic_constraints(&q(-2), &q(2)).unwrap().consistent);
        let r = line_conic_constraints(&q(3), &q(5)).unwrap();
        assert!(!r.opposite_signs && r.coprime_nonsquare_obstruction && !r.consistent);
        assert!(line_conic_constraints(&q(-1), &q(1)).unwrap().consistent);
    }

    #[test]
    fn negative_control() {
        let degrees = vec![GwElement::from_i64s(&Rationals, &[-2]).unwrap(), GwElement::from_i64s(&Rationals, &[2]).unwrap()];
        let refs: Vec<_> = degrees.iter().collect();
        assert!(q_conditions(&refs).unwrap().passed());
        let bad = corrupt_local_degree(&degrees, 0).unwrap();
        assert_eq!(bad[0].diag(), &[q(-6)]);
        let refs: Vec<_> = bad.iter().collect();
        let cond = q_conditions(&refs).unwrap();
        assert_eq!(cond.verdicts["c_p_3_mod_4"], Verdict::Fail);
    }
}
