//! Replays one lemma end to end: invariants from the Hodge diamond, case
//! enumeration, characteristic numbers, the ordered filter sequence, and the
//! certificates behind every elimination.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{rat_int, Rat};
use crate::baseline::{Discrepancy, PrintedCheck};
use crate::enumerate::{
    char_number_table, enumerate_cases, CaseSolution, CharNumbers, ConstraintSystem,
    DivisibilityRule, LatticeBounds,
};
use crate::error::{Error, Result};
use crate::obstruction::{
    ahat_filter, build_embedding_polynomial, check_certificate, check_filter_certificate,
    eliminate, external_fact_filter, mod12_filter, Certificate, ExternalFact, FactEffect,
    FilterContext, IntPoly,
};
use crate::ring::chern_from_case;
use crate::rr::{
    chi_o_from_class, chi_o_minus_chi1_from_class, derive_invariants, l_genus_signature,
    pontryagin_numbers, validate_signature_anchors, DerivedInvariants, HodgeDiamond,
    PontryaginData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "2.1")]
    NegativeQHomP4,
    #[serde(rename = "2.2")]
    FanoQHomP4,
    #[serde(rename = "3.1")]
    HodgeClasses,
    #[serde(rename = "4.2")]
    HodgeLevel,
    #[serde(rename = "A.1")]
    AppendixOne,
    #[serde(rename = "A.2")]
    AppendixTwo,
    #[serde(rename = "A.3")]
    AppendixThree,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::NegativeQHomP4,
        LemmaId::FanoQHomP4,
        LemmaId::HodgeClasses,
        LemmaId::HodgeLevel,
        LemmaId::AppendixOne,
        LemmaId::AppendixTwo,
        LemmaId::AppendixThree,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::NegativeQHomP4 => "2.1",
            LemmaId::FanoQHomP4 => "2.2",
            LemmaId::HodgeClasses => "3.1",
            LemmaId::HodgeLevel => "4.2",
            LemmaId::AppendixOne => "A.1",
            LemmaId::AppendixTwo => "A.2",
            LemmaId::AppendixThree => "A.3",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown lemma id `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterKind {
    #[serde(rename = "mod12")]
    Mod12,
    #[serde(rename = "ahat")]
    Ahat,
    #[serde(rename = "embedding-poly")]
    EmbeddingPoly,
    #[serde(rename = "external-facts")]
    ExternalFacts,
}

impl FilterKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FilterKind::Mod12 => "mod12",
            FilterKind::Ahat => "ahat",
            FilterKind::EmbeddingPoly => "embedding-poly",
            FilterKind::ExternalFacts => "external-facts",
        }
    }
}

impl FromStr for FilterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            FilterKind::Mod12,
            FilterKind::Ahat,
            FilterKind::EmbeddingPoly,
            FilterKind::ExternalFacts,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown filter `{s}`")))
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Enumeration-driven lemma: everything needed besides the target `N`,
/// which comes from the diamond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub diamond: HodgeDiamond,
    pub c1_sign: i8,
    pub lattice: LatticeBounds,
    pub r_range: [i64; 2],
    pub divisibility: DivisibilityRule,
    pub k_lower: Option<Rat>,
    pub c1_fourth_max: Option<i64>,
    /// Apply the `⟨c1⁴⟩` bound derived from `k_lower` on top of the printed bounds.
    pub tight_bound: bool,
    /// Alternative `⟨c1⁴⟩` caps under which the case list must not change.
    pub bound_variants: Vec<i64>,
    pub filters: Vec<FilterKind>,
    pub facts: Vec<ExternalFact>,
    pub max_modulus: u64,
}

impl EnumerationSpec {
    pub fn constraint_system(&self) -> Result<ConstraintSystem> {
        let inv = derive_invariants(&self.diamond)?;
        let sys = ConstraintSystem {
            target_n: inv.target_n,
            r_range: self.r_range,
            lattice: self.lattice,
            k_lower: self.k_lower.clone(),
            divisibility: self.divisibility,
            c1_fourth_max: self.c1_fourth_max,
        };
        Ok(if self.tight_bound { sys.tightened() } else { sys })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPoly {
    pub label: String,
    pub polynomial: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum LemmaMode {
    Enumerate(EnumerationSpec),
    /// Certify the given polynomials directly.
    Direct {
        polynomials: Vec<LabeledPoly>,
        max_modulus: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSpec {
    pub id: LemmaId,
    pub mode: LemmaMode,
    pub baseline_id: Option<LemmaId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "ALL-ELIMINATED")]
    AllEliminated,
    #[serde(rename = "CONCLUDES-P4")]
    ConcludesP4,
    #[serde(rename = "SURVIVORS-REMAIN")]
    SurvivorsRemain,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AllEliminated => "ALL-ELIMINATED",
            Verdict::ConcludesP4 => "CONCLUDES-P4",
            Verdict::SurvivorsRemain => "SURVIVORS-REMAIN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Eliminated { filter: FilterKind },
    ConcludesP4,
    Survives,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    #[serde(flatten)]
    pub solution: CaseSolution,
    pub label: Option<String>,
    #[serde_as(as = "DisplayFromStr")]
    pub degree: BigInt,
    pub numbers: CharNumbers,
    /// `χ(O)` recomputed from the total Chern class.
    #[serde(with = "crate::io::rat_str")]
    pub chi_o_from_class: Rat,
    /// `4χ(O) − χ¹` recomputed from the total Chern class.
    #[serde(with = "crate::io::rat_str")]
    pub todd_one_from_class: Rat,
    pub pontryagin: PontryaginData,
    #[serde(with = "crate::io::rat_str")]
    pub l_genus_signature: Rat,
    pub embedding_polynomial: Option<IntPoly>,
    pub outcome: CaseStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub case_id: usize,
    pub filter: FilterKind,
    pub certificate: Certificate,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub id: usize,
    pub label: String,
    pub polynomial: IntPoly,
    pub certificate: Option<Certificate>,
    pub verified: bool,
    pub note: Option<String>,
}

/// Whether a case list survives a change of the `⟨c1⁴⟩` cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub c1_fourth_max: Option<i64>,
    pub description: String,
    pub cases: usize,
    pub identical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSummary {
    pub target_n: i64,
    pub r_range: [i64; 2],
    pub lattice: LatticeBounds,
    pub divisibility: DivisibilityRule,
    #[serde(with = "crate::io::opt_rat_str")]
    pub k_lower: Option<Rat>,
    pub c1_fourth_max: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub invariants: Option<DerivedInvariants>,
    pub constraints: Option<ConstraintSummary>,
    pub filters: Vec<FilterKind>,
    pub cases: Vec<CaseRecord>,
    pub polynomials: Vec<PolyRecord>,
    pub eliminations: Vec<Elimination>,
    pub survivors: Vec<usize>,
    pub concluded_p4: Vec<usize>,
    pub verdict: Verdict,
    pub bound_checks: Vec<BoundCheck>,
    pub printed_checks: Vec<PrintedCheck>,
    pub notes: Vec<String>,
    pub baseline_diff: Vec<Discrepancy>,
}

impl LemmaReport {
    pub fn case_by_label(&self, label: &str) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.label.as_deref() == Some(label))
    }

    pub fn elimination_for(&self, case_id: usize) -> Option<&Elimination> {
        self.eliminations.iter().find(|e| e.case_id == case_id)
    }
}

fn tabulate(sol: &CaseSolution, inv: &DerivedInvariants) -> Result<CaseRecord> {
    let case = sol.to_case(inv);
    let numbers = char_number_table(sol, inv)?;
    let class = chern_from_case(&case)?;
    let chi_o = chi_o_from_class(&class, &sol.geometry);
    let todd_one = chi_o_minus_chi1_from_class(&class, &sol.geometry);
    if chi_o != rat_int(inv.chi_o) || todd_one != rat_int(4 * inv.chi_o - inv.chi1) {
        return Err(Error::Internal(format!(
            "Riemann-Roch identities fail for case {}: chi(O) = {chi_o}",
            sol.id
        )));
    }
    let pontryagin = pontryagin_numbers(&case);
    let l_genus_signature = l_genus_signature(&pontryagin);
    Ok(CaseRecord {
        solution: sol.clone(),
        label: None,
        degree: sol.degree(),
        numbers,
        chi_o_from_class: chi_o,
        todd_one_from_class: todd_one,
        pontryagin,
        l_genus_signature,
        embedding_polynomial: None,
        outcome: CaseStatus::Survives,
    })
}

fn verdict(survivors: &[usize], concluded: &[usize]) -> Verdict {
    match (survivors.is_empty(), concluded.is_empty()) {
        (true, true) => Verdict::AllEliminated,
        (true, false) => Verdict::ConcludesP4,
        _ => Verdict::SurvivorsRemain,
    }
}

/// Enumerates, tabulates, and applies filters in order. A case leaves the
/// sequence as soon as one filter eliminates it or concludes `P⁴`.
pub fn run_enumeration(id: LemmaId, spec: &EnumerationSpec) -> Result<LemmaReport> {
    validate_signature_anchors()?;
    let inv = derive_invariants(&spec.diamond)?;
    if spec.c1_sign == -1 && spec.r_range[1] >= 0 || spec.c1_sign == 1 && spec.r_range[0] <= 0 {
        return Err(Error::scenario("r_bounds", "sign disagrees with c1_sign"));
    }
    let sys = spec.constraint_system()?;
    let solutions = enumerate_cases(&sys)?;

    let mut bound_checks = Vec::new();
    let mut variants: Vec<(Option<i64>, String)> = Vec::new();
    if !spec.tight_bound && sys.derived_c1_fourth_bound().is_some() {
        let t = sys.tightened();
        variants.push((t.c1_fourth_max, "derived bound from the strict k lower bound".into()));
    }
    for &v in &spec.bound_variants {
        variants.push((Some(v), format!("cap <c1^4> <= {v}")));
    }
    for (cap, description) in variants {
        let alt = ConstraintSystem {
            c1_fourth_max: cap,
            ..sys.clone()
        };
        let alt_solutions = enumerate_cases(&alt)?;
        bound_checks.push(BoundCheck {
            c1_fourth_max: cap,
            description,
            cases: alt_solutions.len(),
            identical: alt_solutions == solutions,
        });
    }

    let mut cases = Vec::with_capacity(solutions.len());
    let mut eliminations = Vec::new();
    let mut notes = Vec::new();
    for sol in &solutions {
        let mut record = tabulate(sol, &inv)?;
        let case = sol.to_case(&inv);
        if spec.filters.contains(&FilterKind::EmbeddingPoly) {
            record.embedding_polynomial = Some(build_embedding_polynomial(&case)?);
        }
        for filter in &spec.filters {
            let ctx = FilterContext {
                solution: sol,
                case: &case,
                numbers: &record.numbers,
                facts: &spec.facts,
            };
            let fired = match filter {
                FilterKind::Mod12 => mod12_filter(&record.numbers),
                FilterKind::Ahat => ahat_filter(&case),
                FilterKind::ExternalFacts => external_fact_filter(sol, &spec.facts),
                FilterKind::EmbeddingPoly => {
                    let p = record.embedding_polynomial.as_ref().expect("built above");
                    match eliminate(p, spec.max_modulus, None) {
                        Ok(cert) if cert.is_no_root() => Some(cert),
                        Ok(cert) => {
                            notes.push(format!("case {}: {cert}", sol.id));
                            None
                        }
                        Err(e) => {
                            notes.push(format!("case {}: {e}", sol.id));
                            None
                        }
                    }
                }
            };
            let Some(cert) = fired else { continue };
            let verified = match filter {
                FilterKind::EmbeddingPoly => check_certificate(
                    record.embedding_polynomial.as_ref().expect("built above"),
                    &cert,
                )
                .is_ok(),
                _ => check_filter_certificate(&cert, &ctx).is_ok(),
            };
            let concludes = matches!(
                cert,
                Certificate::ExternalFact {
                    effect: FactEffect::ConcludesP4,
                    ..
                }
            );
            record.outcome = if concludes {
                CaseStatus::ConcludesP4
            } else {
                CaseStatus::Eliminated { filter: *filter }
            };
            eliminations.push(Elimination {
                case_id: sol.id,
                filter: *filter,
                certificate: cert,
                verified,
            });
            break;
        }
        cases.push(record);
    }

    let survivors: Vec<usize> = cases
        .iter()
        .filter(|c| c.outcome == CaseStatus::Survives)
        .map(|c| c.solution.id)
        .collect();
    let concluded_p4: Vec<usize> = cases
        .iter()
        .filter(|c| c.outcome == CaseStatus::ConcludesP4)
        .map(|c| c.solution.id)
        .collect();
    Ok(LemmaReport {
        lemma: id,
        invariants: Some(inv),
        constraints: Some(ConstraintSummary {
            target_n: sys.target_n,
            r_range: sys.r_range,
            lattice: sys.lattice,
            divisibility: sys.divisibility,
            k_lower: sys.k_lower.clone(),
            c1_fourth_max: sys.c1_fourth_max,
        }),
        filters: spec.filters.clone(),
        verdict: verdict(&survivors, &concluded_p4),
        cases,
        polynomials: Vec::new(),
        eliminations,
        survivors,
        concluded_p4,
        bound_checks,
        printed_checks: Vec::new(),
        notes,
        baseline_diff: Vec::new(),
    })
}

pub fn run_direct(id: LemmaId, polys: &[LabeledPoly], max_modulus: u64) -> Result<LemmaReport> {
    let mut records = Vec::with_capacity(polys.len());
    for (i, lp) in polys.iter().enumerate() {
        let (certificate, note) = match eliminate(&lp.polynomial, max_modulus, None) {
            Ok(c) => (Some(c), None),
            Err(Error::Inconclusive(msg)) => (None, Some(msg)),
            Err(e) => return Err(e),
        };
        let verified = certificate
            .as_ref()
            .is_some_and(|c| check_certificate(&lp.polynomial, c).is_ok());
        records.push(PolyRecord {
            id: i + 1,
            label: lp.label.clone(),
            polynomial: lp.polynomial.clone(),
            certificate,
            verified,
            note,
        });
    }
    let survivors: Vec<usize> = records
        .iter()
        .filter(|r| !(r.verified && r.certificate.as_ref().is_some_and(Certificate::is_no_root)))
        .map(|r| r.id)
        .collect();
    Ok(LemmaReport {
        lemma: id,
        invariants: None,
        constraints: None,
        filters: vec![FilterKind::EmbeddingPoly],
        cases: Vec::new(),
        verdict: verdict(&survivors, &[]),
        polynomials: records,
        eliminations: Vec::new(),
        survivors,
        concluded_p4: Vec::new(),
        bound_checks: Vec::new(),
        printed_checks: Vec::new(),
        notes: Vec::new(),
        baseline_diff: Vec::new(),
    })
}

/// Replays a lemma. Deterministic: equal specs give equal reports.
pub fn run_lemma(spec: &LemmaSpec) -> Result<LemmaReport> {
    match &spec.mode {
        LemmaMode::Enumerate(e) => run_enumeration(spec.id, e),
        LemmaMode::Direct {
            polynomials,
            max_modulus,
        } => run_direct(spec.id, polynomials, *max_modulus),
    }
}
