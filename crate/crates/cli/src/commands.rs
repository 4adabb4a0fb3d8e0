//! Subcommand implementations. Each returns an [`Outcome`]: a JSON value, a
//! human-readable rendering and an exit code.

use std::fmt::Write;
use std::str::FromStr;

use bezout_core::bezout::{
    expected_euler, local_degrees, q_conditions, real_crossings, relative_report, tally_crossings, verify_main,
    verify_over_fq, PointDegree, VerificationReport, Verdict, SCHEMA_VERSION,
};
use bezout_core::field::CheckIrreducible;
use bezout_core::geometry::{chart_coordinates, chart_of, orientability, HomogeneousPoly};
use bezout_core::gw::GwClassify;
use bezout_core::intersect::{find_intersections, CurvePair};
use bezout_core::localdeg::{local_degree_monomial, local_degree_plane};
use bezout_core::poly::Factorize;
use bezout_core::{gw_equal, Error, ExtensionField, Field, GwElement, PrimeField, Rational, Rationals};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::parse::{parse_curve, ParseError};
use crate::plot::{render, PlotError, PlotSpec};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAIL: u8 = 2;
pub const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Debug, ThisError)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Plot(#[from] PlotError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Usage(_) | CmdError::Parse(_) => EXIT_USAGE,
            CmdError::Plot(PlotError::Core(_)) => EXIT_FAIL,
            CmdError::Plot(_) => EXIT_USAGE,
            CmdError::Core(Error::NotOrientable { .. }) => EXIT_NOT_APPLICABLE,
            CmdError::Core(_) => EXIT_FAIL,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn new(json: Value, text: String, code: u8) -> Self {
        Outcome { json, text, code }
    }

    /// Diagnostic outcome for a failed command.
    pub fn from_error(command: &str, e: &CmdError) -> Self {
        let json = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "error": e.to_string(),
            "exit_code": e.exit_code(),
        });
        Outcome::new(json, format!("error: {e}\n"), e.exit_code())
    }
}

/// Worst exit code first: usage, then failure, then not applicable.
pub fn combine_codes(codes: impl IntoIterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        EXIT_USAGE => 3,
        EXIT_FAIL => 2,
        EXIT_NOT_APPLICABLE => 1,
        _ => 0,
    };
    codes.into_iter().max_by_key(|&c| rank(c)).unwrap_or(EXIT_PASS)
}

/// `Q`, `R` (real verification over Q coefficients) or `Fp:p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldArg {
    Q,
    R,
    Fp(u64),
}

impl FromStr for FieldArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Q" => Ok(FieldArg::Q),
            "R" => Ok(FieldArg::R),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .ok_or_else(|| format!("unknown field '{other}'; expected Q, R or Fp:p"))?;
                p.parse::<u64>().map(FieldArg::Fp).map_err(|_| format!("invalid prime in '{other}'"))
            }
        }
    }
}

impl FieldArg {
    fn name(&self) -> String {
        match self {
            FieldArg::Q => "Q".into(),
            FieldArg::R => "R".into(),
            FieldArg::Fp(p) => format!("Fp:{p}"),
        }
    }

    fn prime_field(p: u64) -> Result<PrimeField, CmdError> {
        PrimeField::new(p).map_err(|e| CmdError::Usage(e.to_string()))
    }
}

fn parse_rational(s: &str) -> Result<Rational, CmdError> {
    Rational::from_str(s.trim()).map_err(|_| CmdError::Usage(format!("not a rational number: '{s}'")))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, CmdError> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| CmdError::Usage(format!("invalid {what}: '{t}'"))))
        .collect()
}

fn field_elem<F: Field>(field: &F, s: &str) -> Result<F::Elem, CmdError> {
    let q = parse_rational(s)?;
    field.from_rational(&q).ok_or_else(|| CmdError::Usage(format!("{s} is not defined in {}", field.tag())))
}

fn pair_of<F: Field>(f: &str, g: &str, field: &F) -> Result<CurvePair<F>, CmdError> {
    let f: HomogeneousPoly<F> = parse_curve(f, field)?;
    let g: HomogeneousPoly<F> = parse_curve(g, field)?;
    Ok(CurvePair::new(f, g)?)
}

fn header(command: &str, field: &FieldArg) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "command": command, "field": field.name() })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::NotApplicable => "n/a",
    }
}

fn point_rows<F: GwClassify>(points: &[PointDegree<F>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<6}{:<18}{:<28}{:<6}local degree", "chart", "min poly", "coords", "mult");
    for pd in points {
        let coords = format!("({})", pd.point.coord_text().join(", "));
        let _ = writeln!(
            s,
            "{:<6}{:<18}{:<28}{:<6}{}",
            pd.point.chart,
            pd.point.min_poly_text(),
            coords,
            pd.point.multiplicity,
            pd.local.degree.format_hyperbolic()
        );
    }
    s
}

fn report_text<F: GwClassify>(r: &VerificationReport<F>) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "degrees {:?}, N = {} ({})",
        r.degrees,
        r.orientability.n_twist,
        if r.orientability.orientable { "relatively orientable" } else { "not relatively orientable" }
    );
    s.push_str(&point_rows(&r.points));
    let _ = writeln!(s, "total     {}", r.total.format_hyperbolic());
    if let Some(e) = &r.expected {
        let _ = writeln!(s, "expected  {}", e.format_hyperbolic());
    }
    let verdicts: Vec<String> = r.verdicts.iter().map(|(k, v)| format!("{k} {}", verdict_text(*v))).collect();
    let _ = writeln!(s, "verdicts  {}", verdicts.join(", "));
    s
}

fn not_orientable(field: &FieldArg, df: u32, dg: u32) -> Outcome {
    let orient = orientability(2, &[df, dg]);
    let json = merge(
        header("verify", field),
        json!({
            "degrees": [df, dg],
            "orientability": orient,
            "applicable": false,
            "reason": "not relatively orientable",
            "pass": false,
        }),
    );
    let text = format!("not relatively orientable: N = {} is odd for degrees ({df}, {dg})\n", orient.n_twist);
    Outcome::new(json, text, EXIT_NOT_APPLICABLE)
}

fn relative<F: Factorize + CheckIrreducible + GwClassify>(
    field: &FieldArg,
    pair: &CurvePair<F>,
    seed: u64,
) -> Result<Outcome, CmdError> {
    let r = relative_report(pair, seed)?;
    let json = merge(merge(r.to_json()?, json!({ "applicable": false })), header("verify", field));
    let text = format!("{}no identity is asserted relative to x0 = 0\n", report_text(&r));
    Ok(Outcome::new(json, text, EXIT_NOT_APPLICABLE))
}

pub struct VerifyArgs<'a> {
    pub field: FieldArg,
    pub f: &'a str,
    pub g: &'a str,
    pub seed: u64,
    pub relative: bool,
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CmdError> {
    match a.field {
        FieldArg::Q | FieldArg::R => {
            let pair = pair_of(a.f, a.g, &Rationals)?;
            let (df, dg) = pair.degrees();
            if !orientability(2, &[df, dg]).orientable {
                return if a.relative { relative(&a.field, &pair, a.seed) } else { Ok(not_orientable(&a.field, df, dg)) };
            }
            let r = verify_main(&pair, a.seed)?;
            let mut json = merge(r.to_json()?, header("verify", &a.field));
            let mut text = report_text(&r);
            let mut pass = r.passed();
            if a.field == FieldArg::Q {
                let degrees: Vec<_> = r.points.iter().map(|p| &p.local.degree).collect();
                let cond = q_conditions(&degrees)?;
                pass &= cond.passed();
                let v: Vec<String> = cond.verdicts.iter().map(|(k, v)| format!("{k} {}", verdict_text(*v))).collect();
                let _ = writeln!(text, "over Q    {}", v.join(", "));
                json["q_conditions"] = cond.to_json();
            } else {
                let tally = tally_crossings(&r.points)?;
                let mut crossings = Vec::new();
                for pd in &r.points {
                    crossings.extend(real_crossings(pd)?);
                }
                let verdict = Verdict::of(tally.positive == tally.negative);
                pass &= verdict == Verdict::Pass;
                let _ = writeln!(
                    text,
                    "over R    {} positive, {} negative, {} contributing zero: {}",
                    tally.positive,
                    tally.negative,
                    tally.zero_contribution,
                    verdict_text(verdict)
                );
                json["real"] = json!({ "crossings": crossings, "tally": tally, "verdict": verdict });
            }
            json["pass"] = json!(pass);
            let _ = writeln!(text, "result    {}", if pass { "PASS" } else { "FAIL" });
            Ok(Outcome::new(json, text, if pass { EXIT_PASS } else { EXIT_FAIL }))
        }
        FieldArg::Fp(p) => {
            let field = FieldArg::prime_field(p)?;
            let pair = pair_of(a.f, a.g, &field)?;
            let (df, dg) = pair.degrees();
            if !orientability(2, &[df, dg]).orientable {
                return if a.relative { relative(&a.field, &pair, a.seed) } else { Ok(not_orientable(&a.field, df, dg)) };
            }
            let r = verify_main(&pair, a.seed)?;
            let mut json = merge(r.to_json()?, header("verify", &a.field));
            let mut text = report_text(&r);
            let mut pass = r.passed();
            match verify_over_fq(&pair, a.seed) {
                Ok(fq) => {
                    pass &= fq.verdict == Verdict::Pass && fq.disc_check == Verdict::Pass;
                    let _ = writeln!(
                        text,
                        "over F_q  case ({}), parity {} required {}: {}",
                        fq.case,
                        fq.tally.parity(),
                        fq.required_parity,
                        verdict_text(fq.verdict)
                    );
                    json["fq"] = fq.to_json();
                }
                Err(Error::NonTransverseOverFq) => {
                    let _ = writeln!(text, "over F_q  n/a (non-transverse intersection)");
                    json["fq"] = json!({ "verdict": "n/a", "reason": Error::NonTransverseOverFq.to_string() });
                }
                Err(e) => return Err(e.into()),
            }
            json["pass"] = json!(pass);
            let _ = writeln!(text, "result    {}", if pass { "PASS" } else { "FAIL" });
            Ok(Outcome::new(json, text, if pass { EXIT_PASS } else { EXIT_FAIL }))
        }
    }
}

pub enum DegreeTarget<'a> {
    Monomial(&'a str),
    Curves { f: &'a str, g: &'a str, point: Option<&'a str> },
}

fn parse_monomial<F: Field>(field: &F, spec: &str) -> Result<(F::Elem, usize), CmdError> {
    let (mut a, mut d) = (None, None);
    for part in spec.split(',') {
        match part.split_once('=') {
            Some(("a", v)) => a = Some(field_elem(field, v)?),
            Some(("d", v)) => {
                d = Some(v.trim().parse::<usize>().map_err(|_| CmdError::Usage(format!("invalid degree '{v}'")))?)
            }
            _ => return Err(CmdError::Usage(format!("expected a=<coefficient>,d=<degree>, got '{part}'"))),
        }
    }
    match (a, d) {
        (Some(a), Some(d)) => Ok((a, d)),
        _ => Err(CmdError::Usage("--monomial needs both a and d".into())),
    }
}

fn degree_in<F: Factorize + CheckIrreducible + GwClassify>(
    field: &F,
    arg: &FieldArg,
    target: &DegreeTarget,
    seed: u64,
) -> Result<Outcome, CmdError> {
    match target {
        DegreeTarget::Monomial(spec) => {
            let (a, d) = parse_monomial(field, spec)?;
            let deg = local_degree_monomial(field, &a, d)?;
            let text = deg.format_hyperbolic();
            let json = merge(
                header("degree", arg),
                json!({ "method": "closed-form", "monomial": { "a": field.format(&a), "d": d }, "n": d, "degree": deg.to_json()?, "text": text }),
            );
            Ok(Outcome::new(json, format!("{text}\n"), EXIT_PASS))
        }
        DegreeTarget::Curves { f, g, point: Some(p) } => {
            let pair = pair_of(f, g, field)?;
            let coords: Vec<F::Elem> =
                p.split(':').map(|c| field_elem(field, c)).collect::<Result<_, _>>()?;
            if coords.len() != 3 {
                return Err(CmdError::Usage("points are given as x0:x1:x2".into()));
            }
            let chart = chart_of(field, &coords)?;
            let ext = ExtensionField::rational(field, field.zero());
            let affine: Vec<_> = chart_coordinates(field, &coords, chart)?.iter().map(|c| ext.embed(c)).collect();
            let [fc, gc] = pair.chart_polys(chart)?;
            let local = local_degree_plane(&fc, &gc, &ext, &affine)?;
            let text = local.degree.format_hyperbolic();
            let json = merge(
                header("degree", arg),
                merge(json!({ "point": p, "chart": chart, "text": text }), local.to_json()?),
            );
            Ok(Outcome::new(json, format!("{text}\n"), EXIT_PASS))
        }
        DegreeTarget::Curves { f, g, point: None } => {
            let pair = pair_of(f, g, field)?;
            let points = local_degrees(&pair, seed)?;
            let list: Vec<Value> = points
                .iter()
                .map(|pd| Ok(merge(pd.to_json()?, json!({ "text": pd.local.degree.format_hyperbolic() }))))
                .collect::<Result<_, Error>>()?;
            let json = merge(header("degree", arg), json!({ "points": list }));
            Ok(Outcome::new(json, point_rows(&points), EXIT_PASS))
        }
    }
}

pub fn degree(field: FieldArg, target: &DegreeTarget, seed: u64) -> Result<Outcome, CmdError> {
    match field {
        FieldArg::Q | FieldArg::R => degree_in(&Rationals, &field, target, seed),
        FieldArg::Fp(p) => degree_in(&FieldArg::prime_field(p)?, &field, target, seed),
    }
}

fn gw_in<F: GwClassify>(
    field: &F,
    arg: &FieldArg,
    diag: &str,
    invariants: bool,
    equal: Option<&str>,
) -> Result<Outcome, CmdError> {
    let parse = |s: &str| -> Result<GwElement<F>, CmdError> {
        let entries: Vec<F::Elem> = s.split(',').map(|t| field_elem(field, t)).collect::<Result<_, _>>()?;
        Ok(GwElement::new(field, entries)?)
    };
    let x = parse(diag)?;
    let text = x.format_hyperbolic();
    let mut json = merge(header("gw", arg), json!({ "rank": x.rank(), "text": text }));
    let mut out = format!("{text}\n");
    if invariants {
        json = merge(x.to_json()?, json);
        let inv = x.to_json()?;
        let _ = writeln!(out, "{}", serde_json::to_string(&inv).unwrap_or_default());
    } else {
        json["diag"] = json!(x.diag().iter().map(|a| field.format(a)).collect::<Vec<_>>());
    }
    if let Some(other) = equal {
        let y = parse(other)?;
        let eq = gw_equal(&x, &y)?;
        json["equal"] = json!(eq);
        let _ = writeln!(out, "{} {} {}", text, if eq { "=" } else { "!=" }, y.format_hyperbolic());
    }
    Ok(Outcome::new(json, out, EXIT_PASS))
}

pub fn gw(field: FieldArg, diag: &str, invariants: bool, equal: Option<&str>) -> Result<Outcome, CmdError> {
    match field {
        FieldArg::Q | FieldArg::R => gw_in(&Rationals, &field, diag, invariants, equal),
        FieldArg::Fp(p) => gw_in(&FieldArg::prime_field(p)?, &field, diag, invariants, equal),
    }
}

pub fn euler(field: FieldArg, degrees: &str) -> Result<Outcome, CmdError> {
    let ds: Vec<u32> = parse_list(degrees, "degree")?;
    if ds.is_empty() || ds.contains(&0) {
        return Err(CmdError::Usage("degrees must be positive".into()));
    }
    let orient = orientability(ds.len(), &ds);
    let base = merge(header("euler", &field), json!({ "degrees": ds, "n": ds.len(), "orientability": orient }));
    let e = match field {
        FieldArg::Q | FieldArg::R => expected_euler(&Rationals, &ds).map(|e| e.format_hyperbolic()),
        FieldArg::Fp(p) => expected_euler(&FieldArg::prime_field(p)?, &ds).map(|e| e.format_hyperbolic()),
    };
    match e {
        Ok(text) => {
            let rank: u32 = ds.iter().product();
            let json = merge(base, json!({ "euler": text, "rank": rank }));
            Ok(Outcome::new(json, format!("{text}\n"), EXIT_PASS))
        }
        Err(Error::NotOrientable { n_twist }) => {
            let json = merge(base, json!({ "applicable": false, "reason": "not relatively orientable" }));
            Ok(Outcome::new(json, format!("not relatively orientable: N = {n_twist} is odd\n"), EXIT_NOT_APPLICABLE))
        }
        Err(e) => Err(e.into()),
    }
}

fn intersect_in<F: Factorize + CheckIrreducible>(
    field: &F,
    arg: &FieldArg,
    f: &str,
    g: &str,
    seed: u64,
) -> Result<Outcome, CmdError> {
    let pair = pair_of(f, g, field)?;
    let points = find_intersections(&pair, seed)?;
    let (df, dg) = pair.degrees();
    let total: usize = points.iter().map(|p| p.multiplicity).sum();
    let json = merge(
        header("intersect", arg),
        json!({
            "degrees": [df, dg],
            "points": points.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "total_multiplicity": total,
        }),
    );
    let mut text = String::new();
    let _ = writeln!(text, "{:<6}{:<18}{:<28}{:<6}transverse", "chart", "min poly", "coords", "mult");
    for p in &points {
        let _ = writeln!(
            text,
            "{:<6}{:<18}{:<28}{:<6}{}",
            p.chart,
            p.min_poly_text(),
            format!("({})", p.coord_text().join(", ")),
            p.multiplicity,
            p.transverse
        );
    }
    let _ = writeln!(text, "total multiplicity {total} = {df}·{dg}");
    Ok(Outcome::new(json, text, EXIT_PASS))
}

pub fn intersect(field: FieldArg, f: &str, g: &str, seed: u64) -> Result<Outcome, CmdError> {
    match field {
        FieldArg::Q | FieldArg::R => intersect_in(&Rationals, &field, f, g, seed),
        FieldArg::Fp(p) => intersect_in(&FieldArg::prime_field(p)?, &field, f, g, seed),
    }
}

pub struct PlotArgs<'a> {
    pub f: &'a str,
    pub g: &'a str,
    pub window: &'a str,
    pub samples: usize,
    pub labels: bool,
    pub colors: Option<&'a str>,
    pub seed: u64,
}

/// SVG text for the two curves over Q with exact crossing labels.
pub fn plot(a: &PlotArgs) -> Result<String, CmdError> {
    let w: Vec<Rational> = a.window.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    let window: [Rational; 4] =
        w.try_into().map_err(|_| CmdError::Usage("--window takes xmin,xmax,ymin,ymax".into()))?;
    let mut spec = PlotSpec::new(window, a.samples)?;
    spec.labels = a.labels;
    if let Some(c) = a.colors {
        let parts: Vec<&str> = c.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(CmdError::Usage("--colors takes two comma-separated colors".into()));
        }
        spec.colors = [parts[0].to_string(), parts[1].to_string()];
    }
    let pair = pair_of(a.f, a.g, &Rationals)?;
    let mut crossings = Vec::new();
    match local_degrees(&pair, a.seed) {
        Ok(points) => {
            for pd in &points {
                crossings.extend(real_crossings(pd)?);
            }
        }
        // disjoint real pictures still plot; a shared component has no isolated points
        Err(Error::CommonComponent) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(render([&pair.f, &pair.g], &crossings, &spec)?)
}

/// One `field ; f ; g` instance per line; blank lines and `#` comments are skipped.
pub fn parse_batch(text: &str) -> Result<Vec<(FieldArg, String, String)>, CmdError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(CmdError::Usage(format!("batch line {}: expected 'field ; f ; g'", i + 1)));
        }
        let field = parts[0].parse::<FieldArg>().map_err(|e| CmdError::Usage(format!("batch line {}: {e}", i + 1)))?;
        out.push((field, parts[1].to_string(), parts[2].to_string()));
    }
    Ok(out)
}
