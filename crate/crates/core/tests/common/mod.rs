#![allow(dead_code)]

use chern_gate::enumerate::{enumerate_cases, CaseSolution};
use chern_gate::io::{parse_scenario, shipped};
use chern_gate::pipeline::{EnumerationSpec, LemmaMode};
use chern_gate::rr::DerivedInvariants;
use chern_gate::{derive_invariants, ChernCase, LemmaId};

pub const ENUMERATED: [LemmaId; 4] = [
    LemmaId::NegativeQHomP4,
    LemmaId::FanoQHomP4,
    LemmaId::HodgeClasses,
    LemmaId::HodgeLevel,
];

pub fn enumeration_spec(id: LemmaId) -> EnumerationSpec {
    match parse_scenario(shipped::scenario(id).as_bytes()).unwrap().mode {
        LemmaMode::Enumerate(e) => e,
        LemmaMode::Direct { .. } => panic!("lemma {id} is not an enumeration"),
    }
}

pub fn lemma_cases(id: LemmaId) -> (DerivedInvariants, Vec<CaseSolution>) {
    let spec = enumeration_spec(id);
    let inv = derive_invariants(&spec.diamond).unwrap();
    let cases = enumerate_cases(&spec.constraint_system().unwrap()).unwrap();
    (inv, cases)
}

/// Every enumerated case across the shipped scenarios.
pub fn all_cases() -> Vec<(LemmaId, ChernCase)> {
    ENUMERATED
        .iter()
        .flat_map(|&id| {
            let (inv, cases) = lemma_cases(id);
            cases.into_iter().map(move |s| (id, s.to_case(&inv)))
        })
        .collect()
}
