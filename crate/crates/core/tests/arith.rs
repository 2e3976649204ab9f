use chern_gate::arith::{
    integer_sqrt, leading_digits, parse_rational, polynomial_content, positive_divisors, rat,
    solve_quadratic_rational, Rat,
};
use chern_gate::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Rational roots of `a x² + b x + c` by the rational root theorem, brute force.
fn quadratic_roots_oracle(a: i64, b: i64, c: i64) -> Vec<Rat> {
    let mut out = Vec::new();
    if c == 0 {
        out.push(Rat::zero());
    }
    let cc = if c == 0 { b } else { c };
    let (aa, degree) = if c == 0 { (a, 1) } else { (a, 2) };
    if cc != 0 {
        for p in 1..=cc.abs() {
            if cc % p != 0 {
                continue;
            }
            for q in 1..=aa.abs() {
                if aa % q != 0 {
                    continue;
                }
                for s in [p, -p] {
                    let x = rat(s, q);
                    let v = if degree == 2 {
                        Rat::from(big(a)) * &x * &x + Rat::from(big(b)) * &x + Rat::from(big(c))
                    } else {
                        Rat::from(big(a)) * &x + Rat::from(big(b))
                    };
                    if v.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn parse_examples() {
    assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
    assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
    assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
    assert!(parse_rational("0.4").is_err());
    assert!(parse_rational("").is_err());
}

#[test]
fn quadratic_matches_oracle_exhaustively_on_small_coefficients() {
    for a in (-6i64..=6).filter(|a| *a != 0) {
        for b in -8i64..=8 {
            for c in -8i64..=8 {
                let got = solve_quadratic_rational(&rat(a, 1), &rat(b, 1), &rat(c, 1)).unwrap();
                assert_eq!(got, quadratic_roots_oracle(a, b, c), "{a}x^2 + {b}x + {c}");
            }
        }
    }
}

#[test]
fn leading_digits_rounds() {
    assert_eq!(leading_digits(&big(1_000_401_930_903), 5), ("10004".into(), 12));
    assert_eq!(leading_digits(&big(999_996), 5), ("10000".into(), 6));
    assert_eq!(leading_digits(&big(-45), 2), ("45".into(), 1));
}

proptest! {
    #[test]
    fn parse_display_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn planted_quadratic_roots_recovered(
        p1 in -30i64..30, q1 in 1i64..30, p2 in -30i64..30, q2 in 1i64..30, scale in 1i64..5,
    ) {
        // scale·(q1 x − p1)(q2 x − p2)
        let a = rat(scale * q1 * q2, 1);
        let b = rat(-scale * (q1 * p2 + q2 * p1), 1);
        let c = rat(scale * p1 * p2, 1);
        let mut want = vec![rat(p1, q1), rat(p2, q2)];
        want.sort();
        want.dedup();
        prop_assert_eq!(solve_quadratic_rational(&a, &b, &c).unwrap(), want);
    }

    #[test]
    fn integer_sqrt_only_on_squares(n in 0u64..1_000_000_000_000) {
        let r = integer_sqrt(&BigInt::from(n));
        let s = (n as f64).sqrt() as u64;
        let exact = (s.saturating_sub(1)..=s + 1).find(|t| t * t == n);
        prop_assert_eq!(r, exact.map(BigInt::from));
    }

    #[test]
    fn content_divides_every_coefficient(coeffs in prop::collection::vec(-10_000i64..10_000, 1..9)) {
        prop_assume!(coeffs.iter().any(|c| *c != 0));
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let g = polynomial_content(&big).unwrap();
        prop_assert!(g.is_positive());
        let folded = coeffs.iter().fold(0i64, |acc, c| acc.gcd(c));
        prop_assert_eq!(g, BigInt::from(folded));
    }

    #[test]
    fn divisors_complete(n in 1i64..50_000) {
        let got = positive_divisors(&BigInt::from(n)).unwrap();
        let want: Vec<BigInt> = (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect();
        prop_assert_eq!(got, want);
    }
}
