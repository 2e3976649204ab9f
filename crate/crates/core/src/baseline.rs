//! Expected outcomes transcribed from the published case lists, and the
//! structural diff of a report against them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{leading_digits, Rat};
use crate::enumerate::CharNumbers;
use crate::error::{Error, Result};
use crate::obstruction::{check_certificate, Certificate, IntPoly};
use crate::pipeline::{CaseRecord, CaseStatus, FilterKind, LemmaId, LemmaReport, Verdict};
use crate::ring::FourfoldGeometry;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineCase {
    pub label: String,
    pub geometry: FourfoldGeometry,
    pub r: i64,
    #[serde(with = "crate::io::rat_str")]
    pub k: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineRow {
    pub label: String,
    #[serde(flatten)]
    pub numbers: CharNumbers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineElimination {
    pub label: String,
    pub filter: FilterKind,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselinePoly {
    pub label: String,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub coefficients: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineAhat {
    pub label: String,
    #[serde(with = "crate::io::rat_str")]
    pub value: Rat,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactValue {
    #[serde_as(as = "DisplayFromStr")]
    pub m: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub value: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A printed decimal approximation `mantissa × 10^exponent`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Approximation {
    #[serde_as(as = "DisplayFromStr")]
    pub m: BigInt,
    pub mantissa: String,
    pub exponent: usize,
}

impl Approximation {
    /// Compares against the exact value rounded to the printed precision.
    pub fn matches(&self, exact: &BigInt) -> (bool, String) {
        let digits: String = self.mantissa.chars().filter(char::is_ascii_digit).collect();
        let (got, exp) = leading_digits(exact, digits.len());
        let shown = format!("{}.{}e{exp}", &got[..1], &got[1..]);
        (got == digits && exp == self.exponent, shown)
    }
}

/// The obstruction argument as printed, to be validated independently of
/// whatever certificate the engine finds.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrintedArgument {
    Modular {
        label: String,
        #[serde_as(as = "DisplayFromStr")]
        content: BigInt,
        modulus: u64,
    },
    Divisor {
        label: String,
        #[serde_as(as = "DisplayFromStr")]
        content: BigInt,
        #[serde(default)]
        values: Vec<ExactValue>,
        #[serde(default)]
        approximations: Vec<Approximation>,
    },
}

impl PrintedArgument {
    pub fn label(&self) -> &str {
        match self {
            PrintedArgument::Modular { label, .. } | PrintedArgument::Divisor { label, .. } => label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Baseline {
    pub lemma: LemmaId,
    pub anchor: String,
    #[serde(default)]
    pub cases: Vec<BaselineCase>,
    #[serde(default)]
    pub table: Vec<BaselineRow>,
    #[serde(default)]
    pub eliminated_by: Vec<BaselineElimination>,
    #[serde(default)]
    pub concluded_p4: Vec<String>,
    pub verdict: Verdict,
    #[serde(default)]
    pub polynomials: Vec<BaselinePoly>,
    #[serde(default)]
    pub a_hat: Vec<BaselineAhat>,
    #[serde(default)]
    pub printed_arguments: Vec<PrintedArgument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxCheck {
    pub m: String,
    pub printed: String,
    pub computed: String,
    pub matches: bool,
}

/// Result of validating one printed obstruction argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedCheck {
    pub label: String,
    pub certificate: Option<Certificate>,
    pub verified: bool,
    pub reason: Option<String>,
    pub approximations: Vec<ApproxCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub path: String,
    pub expected: String,
    pub found: String,
}

fn discrepancy(path: impl Into<String>, expected: impl ToString, found: impl ToString) -> Discrepancy {
    Discrepancy {
        path: path.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn case_key(c: &BaselineCase) -> (FourfoldGeometry, i64, Rat) {
    (c.geometry, c.r, c.k.clone())
}

fn record_key(c: &CaseRecord) -> (FourfoldGeometry, i64, Rat) {
    (c.solution.geometry, c.solution.r, c.solution.k.clone())
}

fn find_case<'a>(report: &'a LemmaReport, base: &BaselineCase) -> Option<&'a CaseRecord> {
    let key = case_key(base);
    report.cases.iter().find(|c| record_key(c) == key)
}

/// Polynomial attached to a label: a case's embedding polynomial, or a
/// directly certified polynomial.
fn labeled_poly<'a>(report: &'a LemmaReport, base: &Baseline, label: &str) -> Option<&'a IntPoly> {
    if let Some(bc) = base.cases.iter().find(|c| c.label == label) {
        return find_case(report, bc)?.embedding_polynomial.as_ref();
    }
    report
        .polynomials
        .iter()
        .find(|p| p.label == label)
        .map(|p| &p.polynomial)
}

fn describe_outcome(o: &CaseStatus) -> String {
    match o {
        CaseStatus::Eliminated { filter } => format!("eliminated by {filter}"),
        CaseStatus::ConcludesP4 => "concludes P4".into(),
        CaseStatus::Survives => "survives".into(),
    }
}

fn validate_argument(report: &LemmaReport, base: &Baseline, arg: &PrintedArgument) -> PrintedCheck {
    let label = arg.label().to_string();
    let Some(p) = labeled_poly(report, base, &label) else {
        return PrintedCheck {
            label,
            certificate: None,
            verified: false,
            reason: Some("no polynomial for this label".into()),
            approximations: Vec::new(),
        };
    };
    let built = match arg {
        PrintedArgument::Modular {
            content, modulus, ..
        } => Certificate::modular_for(p, content, *modulus),
        PrintedArgument::Divisor { content, .. } => Certificate::divisor_for(p, content),
    };
    let certificate = match built {
        Ok(c) => c,
        Err(e) => {
            return PrintedCheck {
                label,
                certificate: None,
                verified: false,
                reason: Some(e.to_string()),
                approximations: Vec::new(),
            }
        }
    };
    let mut reason = check_certificate(p, &certificate).err().map(|r| r.0);
    let mut approximations = Vec::new();
    if let (
        PrintedArgument::Divisor {
            values: expected,
            approximations: approx,
            ..
        },
        Certificate::ConstantDivisor {
            divisors, values, ..
        },
    ) = (arg, &certificate)
    {
        let lookup: BTreeMap<&BigInt, &BigInt> = divisors.iter().zip(values).collect();
        for ev in expected {
            match lookup.get(&ev.m) {
                Some(v) if **v == ev.value => {}
                found => {
                    reason.get_or_insert_with(|| {
                        format!(
                            "f({}) expected {}, found {}",
                            ev.m,
                            ev.value,
                            found.map_or("nothing".into(), |v| v.to_string())
                        )
                    });
                }
            }
        }
        for a in approx {
            let (matches, computed) = match lookup.get(&a.m) {
                Some(v) => a.matches(v),
                None => (false, "not a divisor".into()),
            };
            if !matches {
                reason.get_or_insert_with(|| format!("f({}) does not round to the printed value", a.m));
            }
            approximations.push(ApproxCheck {
                m: a.m.to_string(),
                printed: format!("{}e{}", a.mantissa, a.exponent),
                computed,
                matches,
            });
        }
    }
    PrintedCheck {
        label,
        verified: reason.is_none(),
        certificate: Some(certificate),
        reason,
        approximations,
    }
}

/// Structural comparison of a report with its baseline; empty when the
/// report reproduces it exactly.
pub fn diff_baseline(report: &LemmaReport, base: &Baseline) -> Result<Vec<Discrepancy>> {
    if report.lemma != base.lemma {
        return Err(Error::LemmaMismatch {
            report: report.lemma.to_string(),
            baseline: base.lemma.to_string(),
        });
    }
    let mut out = Vec::new();

    for bc in &base.cases {
        if find_case(report, bc).is_none() {
            out.push(discrepancy(
                format!("cases[{}]", bc.label),
                format!("{}, r={}, k={}", bc.geometry, bc.r, bc.k),
                "missing",
            ));
        }
    }
    for rc in &report.cases {
        if !base.cases.iter().any(|bc| case_key(bc) == record_key(rc)) {
            out.push(discrepancy(
                format!("cases[#{}]", rc.solution.id),
                "absent",
                format!(
                    "{}, r={}, k={}",
                    rc.solution.geometry, rc.solution.r, rc.solution.k
                ),
            ));
        }
    }

    for row in &base.table {
        let Some(rc) = base
            .cases
            .iter()
            .find(|c| c.label == row.label)
            .and_then(|bc| find_case(report, bc))
        else {
            out.push(discrepancy(format!("table[{}]", row.label), "row", "missing"));
            continue;
        };
        for ((col, want), got) in CharNumbers::COLUMNS
            .iter()
            .zip(row.numbers.values())
            .zip(rc.numbers.values())
        {
            if want != got {
                out.push(discrepancy(format!("table[{}].{col}", row.label), want, got));
            }
        }
    }

    for bc in &base.cases {
        let Some(rc) = find_case(report, bc) else { continue };
        let expected = if let Some(e) = base.eliminated_by.iter().find(|e| e.label == bc.label) {
            CaseStatus::Eliminated { filter: e.filter }
        } else if base.concluded_p4.contains(&bc.label) {
            CaseStatus::ConcludesP4
        } else {
            CaseStatus::Survives
        };
        if rc.outcome != expected {
            out.push(discrepancy(
                format!("outcome[{}]", bc.label),
                describe_outcome(&expected),
                describe_outcome(&rc.outcome),
            ));
        }
        if let Some(e) = report.elimination_for(rc.solution.id) {
            if !e.verified {
                out.push(discrepancy(
                    format!("certificate[{}]", bc.label),
                    "verified",
                    "rejected",
                ));
            }
        }
    }

    for bp in &base.polynomials {
        let expected = IntPoly::from_descending(bp.coefficients.clone());
        match labeled_poly(report, base, &bp.label) {
            Some(p) if p.descending() == expected.descending() => {}
            Some(p) => out.push(discrepancy(
                format!("polynomial[{}]", bp.label),
                expected.to_string(),
                p.to_string(),
            )),
            None => out.push(discrepancy(
                format!("polynomial[{}]", bp.label),
                expected.to_string(),
                "missing",
            )),
        }
    }

    for ba in &base.a_hat {
        let found = base
            .cases
            .iter()
            .find(|c| c.label == ba.label)
            .and_then(|bc| find_case(report, bc))
            .map(|rc| rc.pontryagin.a_hat.clone());
        if found.as_ref() != Some(&ba.value) {
            out.push(discrepancy(
                format!("a_hat[{}]", ba.label),
                &ba.value,
                found.map_or("missing".into(), |v| v.to_string()),
            ));
        }
    }

    for arg in &base.printed_arguments {
        match report.printed_checks.iter().find(|c| c.label == arg.label()) {
            Some(c) if c.verified => {}
            Some(c) => out.push(discrepancy(
                format!("printed_argument[{}]", arg.label()),
                "verified",
                c.reason.clone().unwrap_or_else(|| "rejected".into()),
            )),
            None => out.push(discrepancy(
                format!("printed_argument[{}]", arg.label()),
                "verified",
                "not checked",
            )),
        }
    }

    for pr in &report.polynomials {
        if !pr.verified || !pr.certificate.as_ref().is_some_and(Certificate::is_no_root) {
            out.push(discrepancy(
                format!("polynomials[{}]", pr.label),
                "verified no-root certificate",
                pr.certificate
                    .as_ref()
                    .map_or("none".into(), |c| c.to_string()),
            ));
        }
    }

    for bc in &report.bound_checks {
        if !bc.identical {
            out.push(discrepancy(
                format!("bound_checks[{}]", bc.description),
                "identical case list",
                format!("{} cases", bc.cases),
            ));
        }
    }

    if report.verdict != base.verdict {
        out.push(discrepancy("verdict", base.verdict, report.verdict));
    }
    Ok(out)
}

/// Labels cases with their published numbering, validates the printed
/// obstruction arguments, and records the baseline diff.
pub fn apply_baseline(report: &mut LemmaReport, base: &Baseline) -> Result<()> {
    if report.lemma != base.lemma {
        return Err(Error::LemmaMismatch {
            report: report.lemma.to_string(),
            baseline: base.lemma.to_string(),
        });
    }
    for bc in &base.cases {
        let key = case_key(bc);
        if let Some(rc) = report.cases.iter_mut().find(|c| record_key(c) == key) {
            rc.label = Some(bc.label.clone());
        }
    }
    report.printed_checks = base
        .printed_arguments
        .iter()
        .map(|arg| validate_argument(report, base, arg))
        .collect();
    report.baseline_diff = diff_baseline(report, base)?;
    Ok(())
}
