//! Fixtures shared by the benchmarks.

use chern_gate::io::{parse_scenario, shipped};
use chern_gate::pipeline::LemmaMode;
use chern_gate::{ConstraintSystem, IntPoly, LemmaId};

pub fn constraint_system(id: LemmaId) -> ConstraintSystem {
    match parse_scenario(shipped::scenario(id).as_bytes()).unwrap().mode {
        LemmaMode::Enumerate(e) => e.constraint_system().unwrap(),
        LemmaMode::Direct { .. } => panic!("lemma {id} has no enumeration"),
    }
}

/// The embedding polynomials certified in the appendix lemmas.
pub fn appendix_polynomials() -> Vec<(String, IntPoly)> {
    [LemmaId::AppendixOne, LemmaId::AppendixTwo, LemmaId::AppendixThree]
        .into_iter()
        .flat_map(|id| match parse_scenario(shipped::scenario(id).as_bytes()).unwrap().mode {
            LemmaMode::Direct { polynomials, .. } => polynomials
                .into_iter()
                .map(move |p| (format!("{id} {}", p.label), p.polynomial))
                .collect::<Vec<_>>(),
            LemmaMode::Enumerate(_) => Vec::new(),
        })
        .collect()
}
