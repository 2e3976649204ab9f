use chern_gate::obstruction::{check_certificate, eliminate, Certificate, IntPoly};
use chern_gate::{verify_certificate, Error};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64_descending(c)
}

/// `(m − root)·q(m)`, descending coefficients.
fn plant(root: i64, q: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); q.len() + 1];
    for (i, c) in q.iter().enumerate() {
        out[i] += BigInt::from(*c);
        out[i + 1] -= BigInt::from(*c) * root;
    }
    out
}

fn positive_root_by_scan(p: &IntPoly, limit: i64) -> Option<i64> {
    (1..=limit).find(|m| p.eval(&BigInt::from(*m)).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn planted_roots_are_always_found(
        root in 1i64..200,
        lead in 1i64..50,
        rest in prop::collection::vec(-40i64..40, 1..7),
        flip in any::<bool>(),
    ) {
        let mut q = vec![if flip { -lead } else { lead }];
        q.extend(rest);
        let p = IntPoly::from_descending(plant(root, &q));
        let cert = eliminate(&p, 720, None).unwrap();
        match &cert {
            Certificate::RootFound { root: found } => {
                prop_assert!(p.eval(found).is_zero());
            }
            other => prop_assert!(false, "planted root {} missed: {}", root, other),
        }
        prop_assert!(verify_certificate(&p, &cert));
    }

    #[test]
    fn no_root_certificates_are_sound(
        coeffs in prop::collection::vec(-60i64..60, 2..8),
    ) {
        prop_assume!(coeffs[0] != 0);
        let p = poly(&coeffs);
        match eliminate(&p, 720, None) {
            Ok(Certificate::RootFound { root }) => prop_assert!(p.eval(&root).is_zero()),
            Ok(cert) => {
                prop_assert!(cert.is_no_root());
                prop_assert!(verify_certificate(&p, &cert));
                // Any positive root is at most max|c_i| + 1 ≤ 61.
                prop_assert_eq!(positive_root_by_scan(&p, 61), None);
            }
            Err(Error::Inconclusive(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn tampered_residues_are_rejected(bump in 1u64..5, at in 0usize..3) {
        let p = poly(&[50625, 0, 0, 0, -28350, -18900, -2700, 225, 30]);
        let Ok(Certificate::Modular { content, modulus, mut residues }) = eliminate(&p, 720, None) else {
            panic!("expected a modular certificate");
        };
        let i = at % residues.len();
        residues[i] = (residues[i] + 1 + bump % (modulus - 1)) % modulus;
        let forged = Certificate::Modular { content, modulus, residues };
        prop_assert!(check_certificate(&p, &forged).is_err());
    }
}

#[test]
fn appendix_octic_certificate() {
    let p = poly(&[50625, 0, 0, 0, -28350, -18900, -2700, 225, 30]);
    let cert = eliminate(&p, 720, None).unwrap();
    assert_eq!(
        cert,
        Certificate::Modular {
            content: BigInt::from(15),
            modulus: 3,
            residues: vec![2, 2, 2],
        }
    );
}

#[test]
fn forged_certificates_are_rejected() {
    let p = poly(&[1, 0, 0, 0, 0, 0, 0, 0, -1]);
    for forged in [
        Certificate::Modular {
            content: BigInt::from(1),
            modulus: 2,
            residues: vec![1, 1],
        },
        Certificate::BoundedExhaustive {
            bound: BigInt::from(2),
        },
        Certificate::RootFound {
            root: BigInt::from(2),
        },
        Certificate::ConstantDivisor {
            content: BigInt::from(1),
            stripped_power: 0,
            constant: BigInt::from(-1),
            divisors: vec![],
            values: vec![],
        },
    ] {
        assert!(!verify_certificate(&p, &forged), "{forged} accepted");
    }
    // Wrong content.
    let q = poly(&[4, 0, 0, 0, -252, -672, -648, -252, -28]);
    let bad = Certificate::divisor_for(&q, &BigInt::from(3));
    assert!(bad.is_err());
}

#[test]
fn printed_divisor_argument_for_two_variable_case() {
    let p = poly(&[4, 0, 0, 0, -252, -168, 648, -90, -232]);
    let cert = Certificate::divisor_for(&p, &BigInt::from(2)).unwrap();
    let Certificate::ConstantDivisor { divisors, values, .. } = &cert else {
        unreachable!()
    };
    let d: Vec<i64> = divisors.iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(d, [1, 2, 4, 29, 58, 116]);
    let v: Vec<String> = values.iter().map(ToString::to_string).collect();
    assert_eq!(
        v,
        [
            "-45",
            "-1086",
            "98328",
            "1000401930903",
            "256124722255338",
            "65568274898807400"
        ]
    );
    assert!(verify_certificate(&p, &cert));
}
