//! Exact replay of Chern-number enumerations and embedding obstructions for
//! rationally elliptic fourfolds in `P⁸`.
//!
//! The pipeline runs: Hodge diamond → Riemann–Roch target → enumerated
//! `(geometry, r, k)` cases → characteristic numbers → ordered filters, each
//! elimination backed by a re-checkable [`Certificate`].

pub mod arith;
pub mod baseline;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod obstruction;
pub mod pipeline;
pub mod ring;
pub mod rr;

pub use arith::Rat;
pub use baseline::{apply_baseline, diff_baseline, Baseline, Discrepancy, PrintedCheck};
pub use enumerate::{
    char_number_table, enumerate_cases, CaseSolution, CharNumbers, ConstraintSystem,
    DivisibilityRule, LatticeBounds,
};
pub use error::{Error, Result};
pub use io::{emit_report, parse_scenario, reproduce, Format, ReportFile};
pub use obstruction::{
    build_embedding_polynomial, eliminate, verify_certificate, Certificate, ExternalFact, IntPoly,
};
pub use pipeline::{run_lemma, CaseStatus, FilterKind, LemmaId, LemmaReport, LemmaSpec, Verdict};
pub use ring::{chern_from_case, ChernCase, FourfoldGeometry, GradedClass};
pub use rr::{derive_invariants, DerivedInvariants, HodgeDiamond};
