mod common;

use chern_gate::arith::{rat, rat_int};
use chern_gate::enumerate::char_number_table;
use chern_gate::ring::{chern_from_case, ChernCase, FourfoldGeometry};
use chern_gate::rr::{
    chi_o_from_class, chi_o_minus_chi1_from_class, derive_invariants, l_genus_signature,
    pontryagin_numbers, validate_signature_anchors, HodgeDiamond,
};
use chern_gate::{Error, LemmaId};
use num_bigint::BigInt;

#[test]
fn targets_for_the_three_diamonds() {
    for (id, c1c3, n, chi_o) in [
        (LemmaId::NegativeQHomP4, 50, 675, 1),
        (LemmaId::FanoQHomP4, 50, 675, 1),
        (LemmaId::HodgeClasses, 48, 678, 1),
        (LemmaId::HodgeLevel, 112, 1344, 2),
    ] {
        let inv = derive_invariants(&common::enumeration_spec(id).diamond).unwrap();
        assert_eq!((inv.c1c3, inv.target_n, inv.chi_o), (c1c3, n, chi_o), "lemma {id}");
    }
}

#[test]
fn signature_anchors_hold() {
    validate_signature_anchors().unwrap();
}

#[test]
fn chi_o_recovered_from_every_case() {
    for id in common::ENUMERATED {
        let (inv, cases) = common::lemma_cases(id);
        for sol in cases {
            let case = sol.to_case(&inv);
            let class = chern_from_case(&case).unwrap();
            assert_eq!(chi_o_from_class(&class, &sol.geometry), rat_int(inv.chi_o));
            assert_eq!(
                chi_o_minus_chi1_from_class(&class, &sol.geometry),
                rat_int(4 * inv.chi_o - inv.chi1)
            );
        }
    }
}

#[test]
fn tabulated_numbers_satisfy_both_formulas() {
    for id in common::ENUMERATED {
        let (inv, cases) = common::lemma_cases(id);
        for sol in cases {
            let t = char_number_table(&sol, &inv).unwrap();
            let todd = -&t.c4 + &t.c1c3 + 3 * &t.c2_sq + 4 * &t.c1sq_c2 - &t.c1_4;
            assert_eq!(todd, BigInt::from(720 * inv.chi_o), "lemma {id}, case {}", sol.id);
            let one = 2 * &t.c4 + &t.c1c3;
            assert_eq!(one, BigInt::from(12 * (4 * inv.chi_o - inv.chi1)));
        }
    }
}

#[test]
fn l_genus_matches_diamond_signature() {
    for id in common::ENUMERATED {
        let (inv, cases) = common::lemma_cases(id);
        for sol in cases {
            let pd = pontryagin_numbers(&sol.to_case(&inv));
            assert_eq!(l_genus_signature(&pd), rat_int(inv.sigma), "lemma {id}, case {}", sol.id);
        }
    }
    let p4 = ChernCase {
        r: 5,
        k: rat(2, 5),
        c1c3_top: 50,
        euler: 5,
        geometry: FourfoldGeometry::Free { d: 1 },
    };
    assert_eq!(l_genus_signature(&pontryagin_numbers(&p4)), rat_int(1));
}

#[test]
fn a_hat_values_in_the_level_cases() {
    let (inv, cases) = common::lemma_cases(LemmaId::HodgeLevel);
    let find = |d: u64, r: i64| {
        let sol = cases
            .iter()
            .find(|s| s.geometry == FourfoldGeometry::Free { d } && s.r == r)
            .unwrap();
        pontryagin_numbers(&sol.to_case(&inv))
    };
    let two = find(14, -2);
    assert!(two.spin_applicable);
    assert_eq!(two.a_hat, rat(1, 4));
    assert_eq!(find(3, -4).a_hat, rat_int(0));
    assert_eq!(find(48, -2).a_hat, rat_int(0));
}

#[test]
fn diamond_validation() {
    let mut h = HodgeDiamond::projective_space().h;
    h[1][2] = 1;
    match HodgeDiamond::new(h) {
        Err(Error::Scenario { path, .. }) => assert_eq!(path, "hodge[1][2]"),
        other => panic!("expected a symmetry error, got {other:?}"),
    }
    let mut h = HodgeDiamond::projective_space().h;
    h[0][0] = 2;
    h[4][4] = 2;
    assert!(HodgeDiamond::new(h).is_err());
}
