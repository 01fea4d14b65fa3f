//! JSON documents and plain-text rendering.
//!
//! Every document carries `"schema": 1`. Integers are JSON numbers of
//! arbitrary size. Monomial, variable and color-class indices are 1-based,
//! matching the usual mathematical notation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::classifier::{Certificate, Payload, Ring, Verdict};
use crate::corpus::FixtureResult;
use crate::poly::{Exponents, Monomial, Polynomial, Variable};
use crate::search::{Outcome, SearchOutcome, ThresholdReport, ThresholdResult};
use crate::witness::Witness;

pub const SCHEMA: u32 = 1;

pub fn number(b: &BigInt) -> Number {
    b.to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

fn numbers(v: &[BigInt]) -> Vec<Number> {
    v.iter().map(number).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn names(v: &[Variable]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn monic(e: &Exponents) -> String {
    Monomial::monic(e.clone()).to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub theorem: String,
    pub payload: Value,
}

impl CertificateJson {
    pub fn of(c: &Certificate) -> Self {
        CertificateJson {
            theorem: c.theorem.name().to_string(),
            payload: payload_json(&c.payload),
        }
    }

    pub fn none() -> Self {
        CertificateJson {
            theorem: "none".into(),
            payload: json!({}),
        }
    }
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Subset {
            coefficients,
            subset,
        } => json!({ "coefficients": numbers(coefficients), "J": one_based(subset) }),
        Payload::Affine {
            coefficients,
            constant,
            diagonal_root,
            subset,
        } => json!({
            "coefficients": numbers(coefficients),
            "constant": number(constant),
            "diagonal_root": diagonal_root.as_ref().map(number),
            "J": subset.as_deref().map(one_based),
        }),
        Payload::Multiplicative {
            left,
            right,
            left_subset,
            right_subset,
        } => {
            let side = |s: &[(Variable, u32)]| -> Vec<Value> {
                s.iter()
                    .map(|(v, e)| json!({ "var": v.to_string(), "exp": e }))
                    .collect()
            };
            json!({
                "left": side(left),
                "right": side(right),
                "I1": one_based(left_subset),
                "I2": one_based(right_subset),
            })
        }
        Payload::Lev(l) => json!({
            "coefficients": numbers(&l.form.coefficients),
            "J": one_based(&l.subset),
            "exclusive": names(&l.form.linear_vars),
            "y": names(&l.form.product_vars),
            "F": l.form.index_sets.iter().map(|f| one_based(f)).collect::<Vec<_>>(),
        }),
        Payload::Nonlinear(n) => json!({
            "coefficients": numbers(&n.coefficients),
            "J": one_based(&n.subset),
            "NL": names(&n.nonlinear),
            "l": n.levels,
            "m": n.multiplicities,
            "chosen": n.chosen.iter().map(|c| names(c)).collect::<Vec<_>>(),
            "z": names(&n.others),
        }),
        Payload::TwoMonomial {
            coefficient,
            gcd,
            quotients,
            inner,
        } => json!({
            "coefficient": number(coefficient),
            "D": monic(gcd),
            "Q1": monic(&quotients.0),
            "Q2": monic(&quotients.1),
            "inner": inner.as_deref().map(CertificateJson::of),
        }),
        Payload::Necessity {
            coefficients,
            degree,
        } => json!({ "coefficients": numbers(coefficients), "degree": degree }),
        Payload::Negated {
            flipped,
            sign_map,
            inner,
        } => json!({
            "flipped": flipped.to_string(),
            "sign_map": sign_map.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            "inner": CertificateJson::of(inner),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub schema: u32,
    pub input: String,
    pub canonical: String,
    pub ring: String,
    pub status: String,
    pub injective: String,
    pub certificate: CertificateJson,
    pub trace: Vec<String>,
    pub notes: Vec<String>,
}

impl VerdictJson {
    pub fn new(input: &str, p: &Polynomial, ring: Ring, v: &Verdict) -> Self {
        VerdictJson {
            schema: SCHEMA,
            input: input.to_string(),
            canonical: p.to_string(),
            ring: ring.code().to_string(),
            status: v.status.code().to_string(),
            injective: v.injective.code().to_string(),
            certificate: v
                .certificate
                .as_ref()
                .map_or_else(CertificateJson::none, CertificateJson::of),
            trace: v.trace.clone(),
            notes: v.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct LiftTraceJson {
    pub eta: Option<Number>,
    pub eta_i: Vec<Number>,
    /// Keys are `"i,j"`, 1-based.
    pub gamma: BTreeMap<String, Number>,
    #[serde(rename = "I")]
    pub index_sets: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub schema: u32,
    pub polynomial: String,
    pub assignment: BTreeMap<String, Number>,
    pub value: Number,
    pub injective: bool,
    pub provenance: String,
    pub trace: LiftTraceJson,
}

impl WitnessJson {
    pub fn new(p: &Polynomial, w: &Witness) -> Self {
        let key = |(i, j): &(usize, usize)| format!("{},{}", i + 1, j + 1);
        WitnessJson {
            schema: SCHEMA,
            polynomial: p.to_string(),
            assignment: w
                .assignment
                .iter()
                .map(|(k, v)| (k.to_string(), number(v)))
                .collect(),
            value: number(&w.value),
            injective: w.is_injective(),
            provenance: w.provenance.name().to_string(),
            trace: LiftTraceJson {
                eta: w.trace.eta.as_ref().map(number),
                eta_i: numbers(&w.trace.eta_i),
                gamma: w.trace.gamma.iter().map(|(k, v)| (key(k), number(v))).collect(),
                index_sets: w
                    .trace
                    .index_sets
                    .iter()
                    .map(|(k, v)| (key(k), one_based(v)))
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsJson {
    pub nodes: u64,
    pub constraints: usize,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub schema: u32,
    pub polynomial: String,
    pub r: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub injective: bool,
    pub outcome: String,
    pub coloring: Option<Vec<u32>>,
    pub stats: StatsJson,
}

impl OutcomeJson {
    pub fn new(o: &SearchOutcome) -> Self {
        OutcomeJson {
            schema: SCHEMA,
            polynomial: o.polynomial.clone(),
            r: o.r,
            n: o.n,
            injective: o.injective,
            outcome: o.outcome.code().to_string(),
            coloring: match &o.outcome {
                Outcome::BadColoring(c) => Some(c.colors.clone()),
                _ => None,
            },
            stats: StatsJson {
                nodes: o.stats.nodes,
                constraints: o.stats.constraints,
                ms: o.stats.ms,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdJson {
    pub schema: u32,
    pub polynomial: String,
    pub r: u32,
    #[serde(rename = "maxN")]
    pub max_n: u32,
    pub injective: bool,
    /// `"forced"`, `"not_found"` or `"inconclusive"`.
    pub result: String,
    pub threshold: Option<u32>,
    pub inconclusive_at: Option<u32>,
    pub outcomes: Vec<OutcomeJson>,
}

impl ThresholdJson {
    pub fn new(t: &ThresholdReport) -> Self {
        let (result, threshold, inconclusive_at) = match t.result {
            ThresholdResult::Forced(n) => ("forced", Some(n), None),
            ThresholdResult::NotFound => ("not_found", None, None),
            ThresholdResult::Inconclusive(n) => ("inconclusive", None, Some(n)),
        };
        ThresholdJson {
            schema: SCHEMA,
            polynomial: t.polynomial.clone(),
            r: t.r,
            max_n: t.max_n,
            injective: t.injective,
            result: result.into(),
            threshold,
            inconclusive_at,
            outcomes: t.outcomes.iter().map(OutcomeJson::new).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub variable_degrees: BTreeMap<String, u32>,
    pub partial_degree: u32,
    #[serde(rename = "NL")]
    pub nonlinear: Vec<String>,
    pub l: Vec<u32>,
    pub m: Vec<u32>,
}

impl ProfileJson {
    pub fn new(p: &Polynomial) -> Self {
        let d = p.degree_profile();
        ProfileJson {
            variable_degrees: d
                .variable_degrees
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            partial_degree: d.partial_degree,
            nonlinear: d.nonlinear.iter().map(ToString::to_string).collect(),
            l: d.levels,
            m: d.multiplicities,
        }
    }
}

/// Everything known about one polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub input: String,
    pub canonical: String,
    pub degree_profile: ProfileJson,
    pub verdict: VerdictJson,
    pub witness: Option<WitnessJson>,
    pub search: Option<OutcomeJson>,
    /// Milliseconds per stage.
    pub timings: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(input: &str, p: &Polynomial, ring: Ring, v: &Verdict) -> Self {
        Report {
            schema: SCHEMA,
            input: input.to_string(),
            canonical: p.to_string(),
            degree_profile: ProfileJson::new(p),
            verdict: VerdictJson::new(input, p, ring, v),
            witness: None,
            search: None,
            timings: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntryJson {
    pub line: usize,
    pub polynomial: String,
    pub ring: String,
    pub source: String,
    pub expected: BTreeMap<String, String>,
    pub verdict: VerdictJson,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusJson {
    pub schema: u32,
    pub total: usize,
    pub mismatched: usize,
    pub fixtures: Vec<CorpusEntryJson>,
}

impl CorpusJson {
    pub fn new(results: &[FixtureResult]) -> Self {
        let fixtures: Vec<CorpusEntryJson> = results
            .iter()
            .map(|r| {
                let f = &r.fixture;
                let expected = [
                    ("status", f.status.code()),
                    ("injective", f.injective.code()),
                    ("criterion", f.theorem.map_or("none", |t| t.name())),
                ]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect();
                CorpusEntryJson {
                    line: f.line,
                    polynomial: f.polynomial.to_string(),
                    ring: f.ring.code().to_string(),
                    source: f.source.clone(),
                    expected,
                    verdict: VerdictJson::new(&f.text, &f.polynomial, f.ring, &r.verdict),
                    ok: r.matches(),
                    mismatches: r.mismatches.clone(),
                }
            })
            .collect();
        CorpusJson {
            schema: SCHEMA,
            total: fixtures.len(),
            mismatched: fixtures.iter().filter(|f| !f.ok).count(),
            fixtures,
        }
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", list(&one_based(v)))
}

fn render_certificate(out: &mut String, c: &Certificate, indent: &str) {
    let _ = writeln!(out, "{indent}criterion: {}", c.theorem);
    match &c.payload {
        Payload::Subset {
            coefficients,
            subset,
        } => {
            let _ = writeln!(out, "{indent}  a = ({})", list(coefficients));
            let _ = writeln!(out, "{indent}  J = {}  (sum of a_j over J is 0)", set(subset));
        }
        Payload::Affine {
            coefficients,
            constant,
            diagonal_root,
            subset,
        } => {
            let _ = writeln!(out, "{indent}  a = ({}), c = {constant}", list(coefficients));
            if let Some(t) = diagonal_root {
                let _ = writeln!(out, "{indent}  diagonal root t = {t}");
            }
            if let Some(j) = subset {
                let _ = writeln!(out, "{indent}  J = {}", set(j));
            }
        }
        Payload::Multiplicative {
            left,
            right,
            left_subset,
            right_subset,
        } => {
            let side = |s: &[(Variable, u32)]| {
                s.iter()
                    .map(|(v, e)| format!("{v}^{e}"))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let _ = writeln!(out, "{indent}  {} = {}", side(left), side(right));
            if !left_subset.is_empty() {
                let _ = writeln!(
                    out,
                    "{indent}  I_1 = {}, I_2 = {}  (equal exponent sums)",
                    set(left_subset),
                    set(right_subset)
                );
            }
        }
        Payload::Lev(l) => {
            let _ = writeln!(out, "{indent}  a = ({})", list(&l.form.coefficients));
            let _ = writeln!(out, "{indent}  J = {}", set(&l.subset));
            let _ = writeln!(
                out,
                "{indent}  exclusive: {}; y = ({})",
                list(&l.form.linear_vars),
                list(&l.form.product_vars)
            );
            for (i, f) in l.form.index_sets.iter().enumerate() {
                let _ = writeln!(out, "{indent}  F_{} = {}", i + 1, set(f));
            }
        }
        Payload::Nonlinear(n) => {
            let _ = writeln!(out, "{indent}  a = ({})", list(&n.coefficients));
            let _ = writeln!(out, "{indent}  J = {}", set(&n.subset));
            let _ = writeln!(out, "{indent}  NL(P) = {{{}}}", list(&n.nonlinear));
            let _ = writeln!(
                out,
                "{indent}  l = ({}), m = ({})",
                list(&n.levels),
                list(&n.multiplicities)
            );
            for (i, c) in n.chosen.iter().enumerate() {
                let _ = writeln!(out, "{indent}  monomial {}: {}", i + 1, list(c));
            }
        }
        Payload::TwoMonomial {
            coefficient,
            gcd,
            quotients,
            inner,
        } => {
            let _ = writeln!(
                out,
                "{indent}  P = {coefficient}*({})*({} - {})",
                monic(gcd),
                monic(&quotients.0),
                monic(&quotients.1)
            );
            if let Some(inner) = inner {
                render_certificate(out, inner, &format!("{indent}  "));
            }
        }
        Payload::Necessity {
            coefficients,
            degree,
        } => {
            let _ = writeln!(
                out,
                "{indent}  a = ({}), degree {degree}: no nonempty subset sums to 0",
                list(coefficients)
            );
        }
        Payload::Negated { flipped, inner, .. } => {
            let _ = writeln!(out, "{indent}  P(-x) = {flipped}");
            render_certificate(out, inner, &format!("{indent}  "));
        }
    }
}

pub fn render_verdict(p: &Polynomial, ring: Ring, v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {p}");
    let _ = writeln!(
        out,
        "status on {}: {} (injective: {})",
        ring.code(),
        v.status.code(),
        v.injective.code()
    );
    match &v.certificate {
        Some(c) => render_certificate(&mut out, c, ""),
        None => {
            let _ = writeln!(out, "criterion: none");
        }
    }
    if !v.trace.is_empty() {
        let _ = writeln!(out, "trace:");
        for t in &v.trace {
            let _ = writeln!(out, "  - {t}");
        }
    }
    if !v.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for n in &v.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

pub fn render_witness(p: &Polynomial, w: &Witness) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {p}");
    let _ = writeln!(out, "method: {}", w.provenance.name());
    for (k, v) in &w.assignment {
        let _ = writeln!(out, "  {k} = {v}");
    }
    let _ = writeln!(out, "value: {}", w.value);
    let _ = writeln!(out, "injective: {}", w.is_injective());
    if let Some(eta) = &w.trace.eta {
        let _ = writeln!(out, "eta = {eta}");
    }
    if !w.trace.eta_i.is_empty() {
        let _ = writeln!(out, "eta_i = ({})", list(&w.trace.eta_i));
    }
    for ((i, j), g) in &w.trace.gamma {
        let _ = writeln!(
            out,
            "gamma_{},{} = {g}  I_{},{} = {}",
            i + 1,
            j + 1,
            i + 1,
            j + 1,
            set(&w.trace.index_sets[&(*i, *j)])
        );
    }
    out
}

pub fn render_outcome(o: &SearchOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} with r = {}, N = {}{}",
        o.polynomial,
        o.r,
        o.n,
        if o.injective { ", injective" } else { "" }
    );
    match &o.outcome {
        Outcome::BadColoring(c) => {
            let _ = writeln!(out, "bad coloring: [{}]", list(&c.colors));
            for (i, class) in c.classes().iter().enumerate() {
                let _ = writeln!(out, "  color {i}: {{{}}}", list(class));
            }
        }
        Outcome::Forced => {
            let _ = writeln!(out, "forced: every coloring has a monochromatic solution");
        }
        Outcome::Inconclusive => {
            let _ = writeln!(out, "inconclusive: node budget exhausted");
        }
    }
    let _ = writeln!(
        out,
        "nodes: {}, constraints: {}, ms: {}",
        o.stats.nodes, o.stats.constraints, o.stats.ms
    );
    out
}

pub fn render_threshold(t: &ThresholdReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} with r = {}{}",
        t.polynomial,
        t.r,
        if t.injective { ", injective" } else { "" }
    );
    for o in &t.outcomes {
        let _ = writeln!(out, "  N = {}: {}", o.n, o.outcome.code());
    }
    let _ = match t.result {
        ThresholdResult::Forced(n) => writeln!(out, "threshold: {n}"),
        ThresholdResult::NotFound => writeln!(out, "no forced N up to {}", t.max_n),
        ThresholdResult::Inconclusive(n) => {
            writeln!(out, "inconclusive: node budget exhausted at N = {n}")
        }
    };
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, classify_in};
    use crate::search::{find_bad_coloring, SearchConfig};
    use crate::witness::reduct_witness;

    fn round_trip<T>(value: &T)
    where
        T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug,
    {
        let text = serde_json::to_string(value).unwrap();
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, value);
    }

    #[test]
    fn verdict_json_shape() {
        let p: Polynomial = "x1 + x2 - y1*y2".parse().unwrap();
        let v = VerdictJson::new("x1+x2-y1*y2", &p, Ring::Naturals, &classify(&p));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["schema"], 1);
        assert_eq!(j["status"], "PR");
        assert_eq!(j["injective"], "yes");
        assert_eq!(j["certificate"]["theorem"], "LevExclusive");
        assert_eq!(j["certificate"]["payload"]["J"], json!([1, 3]));
        assert_eq!(j["certificate"]["payload"]["F"], json!([[], [], [1]]));
        round_trip(&v);

        let q: Polynomial = "x*y + x*z - y*z".parse().unwrap();
        let v = VerdictJson::new("x*y+x*z-y*z", &q, Ring::Naturals, &classify(&q));
        assert_eq!(v.certificate, CertificateJson::none());
        assert_eq!(v.notes.len(), 1);
    }

    #[test]
    fn big_integers_stay_numbers() {
        let p: Polynomial = "123456789012345678901234567890*x - 123456789012345678901234567890*y"
            .parse()
            .unwrap();
        let v = VerdictJson::new("", &p, Ring::Naturals, &classify(&p));
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("[123456789012345678901234567890,-123456789012345678901234567890]"));
        round_trip(&v);
    }

    #[test]
    fn report_round_trips() {
        let p: Polynomial = "x1*y1 + x2*y2 + x3".parse().unwrap();
        let v = classify_in(&p, Ring::Integers);
        let mut r = Report::new("x1*y1 + x2*y2 + x3", &p, Ring::Integers, &v);
        let q: Polynomial = "x1*y1 + x2*y2 - x3".parse().unwrap();
        r.witness = Some(WitnessJson::new(&q, &reduct_witness(&q).unwrap()));
        let s: Polynomial = "x + y - z".parse().unwrap();
        let o = find_bad_coloring(&s, 2, 4, false, &SearchConfig::default()).unwrap();
        r.search = Some(OutcomeJson::new(&o));
        r.timings.insert("classify".into(), 0);
        round_trip(&r);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["search"]["coloring"], json!([0, 1, 1, 0]));
        assert_eq!(j["search"]["N"], 4);
        assert_eq!(j["verdict"]["certificate"]["payload"]["sign_map"]["x1"], -1);
    }

    #[test]
    fn rendering_uses_theorem_notation() {
        let p: Polynomial = "x11*y1^2*y2^2 + x21*x22*z1*y2^2 - 2*x31*x32*z2*y1 + x41*x42"
            .parse()
            .unwrap();
        let text = render_verdict(&p, Ring::Naturals, &classify(&p));
        assert!(text.contains("criterion: NonlinearExclusive"));
        assert!(text.contains("l = (0,2,2,2), m = (1,2,2,2)"));
        assert!(text.contains("NL(P) = {y1,y2}"));
    }
}
