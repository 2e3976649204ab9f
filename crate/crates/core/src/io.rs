//! Scenario files, shipped data, and report serialization.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use sha2::{Digest, Sha256};

use crate::arith::parse_rational;
use crate::baseline::{apply_baseline, Baseline};
use crate::enumerate::{DivisibilityRule, LatticeBounds};
use crate::error::{Error, Result};
use crate::obstruction::{ExternalFact, IntPoly, DEFAULT_MAX_MODULUS};
use crate::pipeline::{
    run_lemma, CaseRecord, CaseStatus, EnumerationSpec, FilterKind, LabeledPoly, LemmaId,
    LemmaMode, LemmaReport, LemmaSpec,
};
use crate::rr::HodgeDiamond;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rationals as `"p/q"` strings.
pub mod rat_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::arith::{parse_rational, Rat};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod opt_rat_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::arith::{parse_rational, Rat};

    pub fn serialize<S: Serializer>(q: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.collect_str(q),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    label: String,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    coefficients: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    lemma: LemmaId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hodge: Option<[[u32; 5]; 5]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c1_sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<LatticeBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r_bounds: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    divisibility: Option<DivisibilityRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k_lower: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c1_fourth_max: Option<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    tight_bound: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bound_variants: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    filters: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    facts: Vec<ExternalFact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    polynomials: Vec<RawPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    baseline_id: Option<LemmaId>,
}

fn required<T>(v: Option<T>, path: &str) -> Result<T> {
    v.ok_or_else(|| Error::scenario(path, "missing field"))
}

fn lift(raw: RawScenario) -> Result<LemmaSpec> {
    let max_modulus = raw.max_modulus.unwrap_or(DEFAULT_MAX_MODULUS);
    if max_modulus < 2 {
        return Err(Error::scenario("max_modulus", "must be at least 2"));
    }
    if !raw.polynomials.is_empty() {
        if raw.hodge.is_some() || raw.lattice.is_some() {
            return Err(Error::scenario(
                "polynomials",
                "direct mode takes no enumeration fields",
            ));
        }
        let mut polynomials = Vec::with_capacity(raw.polynomials.len());
        for (i, p) in raw.polynomials.into_iter().enumerate() {
            let poly = IntPoly::from_descending(p.coefficients);
            if poly.degree() == 0 {
                return Err(Error::scenario(
                    format!("polynomials[{i}].coefficients"),
                    "polynomial must be non-constant",
                ));
            }
            polynomials.push(LabeledPoly {
                label: p.label,
                polynomial: poly,
            });
        }
        return Ok(LemmaSpec {
            id: raw.lemma,
            mode: LemmaMode::Direct {
                polynomials,
                max_modulus,
            },
            baseline_id: raw.baseline_id,
        });
    }

    let diamond = HodgeDiamond {
        h: required(raw.hodge, "hodge")?,
    };
    diamond.validate()?;
    let c1_sign = required(raw.c1_sign, "c1_sign")?;
    if c1_sign != 1 && c1_sign != -1 {
        return Err(Error::scenario("c1_sign", "must be -1 or 1"));
    }
    let k_lower = raw
        .k_lower
        .map(|s| parse_rational(&s).map_err(|e| Error::scenario("k_lower", e.to_string())))
        .transpose()?;
    let mut filters = Vec::with_capacity(raw.filters.len());
    for (i, f) in raw.filters.iter().enumerate() {
        let kind: FilterKind = f
            .parse()
            .map_err(|e: Error| Error::scenario(format!("filters[{i}]"), e.to_string()))?;
        if filters.contains(&kind) {
            return Err(Error::scenario(format!("filters[{i}]"), "duplicate filter"));
        }
        filters.push(kind);
    }
    let spec = EnumerationSpec {
        diamond,
        c1_sign,
        lattice: required(raw.lattice, "lattice")?,
        r_range: required(raw.r_bounds, "r_bounds")?,
        divisibility: required(raw.divisibility, "divisibility")?,
        k_lower,
        c1_fourth_max: raw.c1_fourth_max,
        tight_bound: raw.tight_bound,
        bound_variants: raw.bound_variants,
        filters,
        facts: raw.facts,
        max_modulus,
    };
    spec.constraint_system()?.validate()?;
    Ok(LemmaSpec {
        id: raw.lemma,
        mode: LemmaMode::Enumerate(spec),
        baseline_id: raw.baseline_id,
    })
}

/// Parses and validates a scenario document. Errors carry the JSON path.
pub fn parse_scenario(bytes: &[u8]) -> Result<LemmaSpec> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let raw: RawScenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::scenario(path, e.into_inner().to_string())
    })?;
    lift(raw)
}

/// Canonical scenario document for a spec; `parse_scenario` inverts it.
pub fn emit_scenario(spec: &LemmaSpec) -> Vec<u8> {
    let raw = match &spec.mode {
        LemmaMode::Enumerate(e) => RawScenario {
            lemma: spec.id,
            hodge: Some(e.diamond.h),
            c1_sign: Some(e.c1_sign),
            lattice: Some(e.lattice),
            r_bounds: Some(e.r_range),
            divisibility: Some(e.divisibility),
            k_lower: e.k_lower.as_ref().map(ToString::to_string),
            c1_fourth_max: e.c1_fourth_max,
            tight_bound: e.tight_bound,
            bound_variants: e.bound_variants.clone(),
            filters: e.filters.iter().map(ToString::to_string).collect(),
            facts: e.facts.clone(),
            max_modulus: Some(e.max_modulus),
            polynomials: Vec::new(),
            baseline_id: spec.baseline_id,
        },
        LemmaMode::Direct {
            polynomials,
            max_modulus,
        } => RawScenario {
            lemma: spec.id,
            hodge: None,
            c1_sign: None,
            lattice: None,
            r_bounds: None,
            divisibility: None,
            k_lower: None,
            c1_fourth_max: None,
            tight_bound: false,
            bound_variants: Vec::new(),
            filters: Vec::new(),
            facts: Vec::new(),
            max_modulus: Some(*max_modulus),
            polynomials: polynomials
                .iter()
                .map(|p| RawPoly {
                    label: p.label.clone(),
                    coefficients: p.polynomial.descending().to_vec(),
                })
                .collect(),
            baseline_id: spec.baseline_id,
        },
    };
    let mut out = serde_json::to_vec_pretty(&raw).expect("scenario serializes");
    out.push(b'\n');
    out
}

pub fn parse_baseline(bytes: &[u8]) -> Result<Baseline> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::scenario(format!("baseline.{path}"), e.into_inner().to_string())
    })
}

/// Scenario and baseline documents compiled into the binary.
pub mod shipped {
    use crate::pipeline::LemmaId;

    pub fn scenario(id: LemmaId) -> &'static str {
        match id {
            LemmaId::NegativeQHomP4 => include_str!("../data/scenarios/lemma-2.1.json"),
            LemmaId::FanoQHomP4 => include_str!("../data/scenarios/lemma-2.2.json"),
            LemmaId::HodgeClasses => include_str!("../data/scenarios/lemma-3.1.json"),
            LemmaId::HodgeLevel => include_str!("../data/scenarios/lemma-4.2.json"),
            LemmaId::AppendixOne => include_str!("../data/scenarios/lemma-A.1.json"),
            LemmaId::AppendixTwo => include_str!("../data/scenarios/lemma-A.2.json"),
            LemmaId::AppendixThree => include_str!("../data/scenarios/lemma-A.3.json"),
        }
    }

    pub fn baseline(id: LemmaId) -> &'static str {
        match id {
            LemmaId::NegativeQHomP4 => include_str!("../data/baselines/lemma-2.1.json"),
            LemmaId::FanoQHomP4 => include_str!("../data/baselines/lemma-2.2.json"),
            LemmaId::HodgeClasses => include_str!("../data/baselines/lemma-3.1.json"),
            LemmaId::HodgeLevel => include_str!("../data/baselines/lemma-4.2.json"),
            LemmaId::AppendixOne => include_str!("../data/baselines/lemma-A.1.json"),
            LemmaId::AppendixTwo => include_str!("../data/baselines/lemma-A.2.json"),
            LemmaId::AppendixThree => include_str!("../data/baselines/lemma-A.3.json"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    /// SHA-256 of the scenario bytes, hex.
    pub input_hash: String,
    #[serde(flatten)]
    pub report: LemmaReport,
}

impl ReportFile {
    pub fn new(report: LemmaReport, input: &[u8]) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            input_hash: hex::encode(Sha256::digest(input)),
            report,
        }
    }

    pub fn matches_baseline(&self) -> bool {
        self.report.baseline_diff.is_empty()
    }
}

/// Runs a scenario and, when it names one, diffs against the shipped baseline.
pub fn replay(input: &[u8]) -> Result<ReportFile> {
    let spec = parse_scenario(input)?;
    let mut report = run_lemma(&spec)?;
    if let Some(id) = spec.baseline_id {
        let base = parse_baseline(shipped::baseline(id).as_bytes())?;
        apply_baseline(&mut report, &base)?;
    }
    Ok(ReportFile::new(report, input))
}

pub fn reproduce(id: LemmaId) -> Result<ReportFile> {
    replay(shipped::scenario(id).as_bytes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::InvalidInput(format!("unknown format `{s}`"))),
        }
    }
}

pub fn emit_report(file: &ReportFile, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(file).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Markdown => render_markdown(file).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<ReportFile> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::scenario(path, e.into_inner().to_string())
    })
}

fn label_key(c: &CaseRecord) -> (u8, u64, usize) {
    match c.label.as_deref() {
        Some(l) => {
            let n = l.trim_matches(|ch| ch == '(' || ch == ')').parse().unwrap_or(u64::MAX);
            (0, n, c.solution.id)
        }
        None => (1, 0, c.solution.id),
    }
}

fn case_name(c: &CaseRecord) -> String {
    c.label.clone().unwrap_or_else(|| format!("#{}", c.solution.id))
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_markdown(file: &ReportFile) -> String {
    let r = &file.report;
    let mut s = String::new();
    let _ = writeln!(s, "# Lemma {} replay\n", r.lemma);
    let _ = writeln!(s, "- verdict: **{}**", r.verdict);
    let _ = writeln!(s, "- tool version: {}", file.tool_version);
    let _ = writeln!(s, "- input hash: `{}`", file.input_hash);
    if let Some(inv) = &r.invariants {
        let _ = writeln!(
            s,
            "- invariants: χ = {}, χ(O) = {}, χ¹ = {}, σ = {}, <c1c3> = {}, N = {}",
            inv.chi, inv.chi_o, inv.chi1, inv.sigma, inv.c1c3, inv.target_n
        );
    }
    if !r.filters.is_empty() {
        let names: Vec<_> = r.filters.iter().map(|f| f.as_str()).collect();
        let _ = writeln!(s, "- filters: {}", names.join(", "));
    }

    let mut cases: Vec<&CaseRecord> = r.cases.iter().collect();
    cases.sort_by_key(|c| label_key(c));
    if !cases.is_empty() {
        s.push_str("\n## Cases\n\n| case | geometry | r | k | d | outcome |\n|---|---|---|---|---|---|\n");
        for c in &cases {
            let outcome = match &c.outcome {
                CaseStatus::Eliminated { filter } => format!("eliminated ({filter})"),
                CaseStatus::ConcludesP4 => "P4".into(),
                CaseStatus::Survives => "survives".into(),
            };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                case_name(c),
                c.solution.geometry,
                c.solution.r,
                c.solution.k,
                c.degree,
                outcome
            );
        }
        s.push_str("\n## Characteristic numbers\n\n| cases | <c1^4> | <c1c3> | <c1^2c2> | <c2^2> | <c4> |\n|---|---|---|---|---|---|\n");
        for c in &cases {
            let v = c.numbers.values();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                case_name(c),
                v[0],
                v[1],
                v[2],
                v[3],
                v[4]
            );
        }
    }

    if !r.eliminations.is_empty() {
        s.push_str("\n## Eliminations\n\n| case | filter | certificate | verified |\n|---|---|---|---|\n");
        for c in &cases {
            if let Some(e) = r.elimination_for(c.solution.id) {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    case_name(c),
                    e.filter,
                    md_escape(&e.certificate.to_string()),
                    e.verified
                );
            }
        }
    }

    if !r.polynomials.is_empty() {
        s.push_str("\n## Polynomials\n\n| label | polynomial | certificate | verified |\n|---|---|---|---|\n");
        for p in &r.polynomials {
            let cert = p
                .certificate
                .as_ref()
                .map(ToString::to_string)
                .or_else(|| p.note.clone())
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                p.label,
                p.polynomial,
                md_escape(&cert),
                p.verified
            );
        }
    }

    if !r.printed_checks.is_empty() {
        s.push_str("\n## Printed arguments\n\n| label | certificate | verified |\n|---|---|---|\n");
        for c in &r.printed_checks {
            let cert = c
                .certificate
                .as_ref()
                .map(ToString::to_string)
                .or_else(|| c.reason.clone())
                .unwrap_or_default();
            let _ = writeln!(s, "| {} | {} | {} |", c.label, md_escape(&cert), c.verified);
            for a in &c.approximations {
                let _ = writeln!(
                    s,
                    "|  | f({}) ≈ {} (printed {}) | {} |",
                    a.m, a.computed, a.printed, a.matches
                );
            }
        }
    }

    if !r.bound_checks.is_empty() {
        s.push_str("\n## Bound checks\n\n| bound | cases | identical |\n|---|---|---|\n");
        for b in &r.bound_checks {
            let _ = writeln!(s, "| {} | {} | {} |", md_escape(&b.description), b.cases, b.identical);
        }
    }

    if !r.notes.is_empty() {
        s.push_str("\n## Notes\n\n");
        for n in &r.notes {
            let _ = writeln!(s, "- {n}");
        }
    }

    s.push_str("\n## Baseline diff\n\n");
    if r.baseline_diff.is_empty() {
        s.push_str("none\n");
    } else {
        s.push_str("| path | expected | found |\n|---|---|---|\n");
        for d in &r.baseline_diff {
            let _ = writeln!(
                s,
                "| {} | {} | {} |",
                d.path,
                md_escape(&d.expected),
                md_escape(&d.found)
            );
        }
    }
    s
}
