//! Exact integer and rational helpers.
//!
//! Integers are [`num_bigint::BigInt`]; rationals are [`num_rational::BigRational`],
//! which is always stored in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Largest `|n|` for which [`positive_divisors`] will run trial division.
pub const DIVISOR_TRIAL_LIMIT: u128 = 100_000_000_000_000;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Canonical rational `num/den`: positive denominator, coprime to the numerator.
pub fn normalize_rational(num: BigInt, den: BigInt) -> Result<Rat> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(Rat::new_raw(n, d))
}

/// Parses `"p/q"` or `"p"`. Anything else, including decimal notation, is rejected.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("`{text}` is not an exact rational p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let is_int = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    normalize_rational(num, den)
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// The non-negative rational whose square is `q`, when `q` is a rational square.
pub fn rational_sqrt(q: &Rat) -> Option<Rat> {
    // Lowest terms means q is a square iff numerator and denominator both are.
    let num = integer_sqrt(q.numer())?;
    let den = integer_sqrt(q.denom())?;
    Some(Rat::new_raw(num, den))
}

/// Rational roots of `a·x² + b·x + c`, ascending, with a double root reported once.
pub fn solve_quadratic_rational(a: &Rat, b: &Rat, c: &Rat) -> Result<Vec<Rat>> {
    if a.is_zero() {
        return Err(Error::InvalidInput("leading coefficient is zero".into()));
    }
    let disc = b * b - rat_int(4) * a * c;
    let Some(root) = rational_sqrt(&disc) else {
        return Ok(Vec::new());
    };
    let two_a = rat_int(2) * a;
    let lo = (-b - &root) / &two_a;
    let hi = (-b + &root) / &two_a;
    let mut out = vec![lo, hi];
    out.sort();
    out.dedup();
    Ok(out)
}

/// Positive gcd of the coefficients.
pub fn polynomial_content(coeffs: &[BigInt]) -> Result<BigInt> {
    let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Err(Error::InvalidInput(
            "content of the zero polynomial is undefined".into(),
        ));
    }
    Ok(g)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// All positive divisors of `n` in ascending order, or `None` when `|n|`
/// exceeds [`DIVISOR_TRIAL_LIMIT`] (or `n` is zero).
pub fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u128()?;
    if n == 0 || n > DIVISOR_TRIAL_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i: u128 = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(BigInt::from).collect())
}

/// `true` when the rational is an integer.
pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Integer value of a rational that is known to be integral.
pub fn to_integer(q: &Rat, what: &str) -> Result<BigInt> {
    if is_integral(q) {
        Ok(q.numer().clone())
    } else {
        Err(Error::Internal(format!("{what} = {q} is not an integer")))
    }
}

/// Scientific-notation mantissa of `|n|` rounded half-up to `digits`
/// significant figures, returned as (mantissa digits, decimal exponent).
pub fn leading_digits(n: &BigInt, digits: usize) -> (String, usize) {
    let s = n.abs().to_string();
    let exponent = s.len() - 1;
    if s.len() <= digits {
        return (format!("{s:0<digits$}"), exponent);
    }
    let head: BigInt = s[..digits].parse().expect("decimal digits");
    let next = s.as_bytes()[digits] - b'0';
    let rounded = if next >= 5 { head + 1 } else { head };
    let r = rounded.to_string();
    if r.len() > digits {
        (r[..digits].to_string(), exponent + 1)
    } else {
        (r, exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_rational(int(4), int(6)).unwrap(), rat(2, 3));
        assert_eq!(normalize_rational(int(10), int(1)).unwrap(), rat_int(10));
        let q = normalize_rational(int(-26), int(-15)).unwrap();
        assert_eq!((q.numer().clone(), q.denom().clone()), (int(26), int(15)));
        assert_eq!(
            normalize_rational(int(3), int(0)),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rational_sqrt(&rat_int(135424)), Some(rat_int(368)));
        assert_eq!(rational_sqrt(&rat_int(0)), Some(rat_int(0)));
        assert_eq!(rational_sqrt(&rat_int(2)), None);
        assert_eq!(rational_sqrt(&rat(-4, 9)), None);
        assert_eq!(rational_sqrt(&rat(121, 49)), Some(rat(11, 7)));
    }

    #[test]
    fn quadratic_examples() {
        let r = solve_quadratic_rational(&rat_int(3), &rat_int(4), &rat_int(-4)).unwrap();
        assert_eq!(r, vec![rat_int(-2), rat(2, 3)]);
        let c = rat_int(-1) - rat(27, 25);
        let r = solve_quadratic_rational(&rat_int(3), &rat_int(4), &c).unwrap();
        assert_eq!(r, vec![rat(-26, 15), rat(2, 5)]);
        assert!(solve_quadratic_rational(&rat_int(1), &rat_int(0), &rat_int(1))
            .unwrap()
            .is_empty());
        // (x - 1)^2
        let r = solve_quadratic_rational(&rat_int(1), &rat_int(-2), &rat_int(1)).unwrap();
        assert_eq!(r, vec![rat_int(1)]);
        assert!(solve_quadratic_rational(&rat_int(0), &rat_int(1), &rat_int(1)).is_err());
    }

    #[test]
    fn content_examples() {
        let p: Vec<BigInt> = [50625, -28350, -18900, -2700, 225, 30]
            .into_iter()
            .map(int)
            .collect();
        assert_eq!(polynomial_content(&p).unwrap(), int(15));
        let p: Vec<BigInt> = [2304, -6048, -8064, -3456, -504, -16]
            .into_iter()
            .map(int)
            .collect();
        assert_eq!(polynomial_content(&p).unwrap(), int(8));
        assert_eq!(polynomial_content(&[int(1)]).unwrap(), int(1));
        assert!(polynomial_content(&[int(0), int(0)]).is_err());
    }

    #[test]
    fn parse_rejects_decimals() {
        assert_eq!(parse_rational("2/5").unwrap(), rat(2, 5));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert!(parse_rational("0.4").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn divisors_of_116() {
        let d = positive_divisors(&int(-116)).unwrap();
        let want: Vec<BigInt> = [1, 2, 4, 29, 58, 116].into_iter().map(int).collect();
        assert_eq!(d, want);
        assert!(positive_divisors(&int(0)).is_none());
    }

    #[test]
    fn leading_digit_rounding() {
        assert_eq!(leading_digits(&int(1000401930903), 5), ("10004".into(), 12));
        assert_eq!(leading_digits(&int(-99999), 3), ("100".into(), 5));
        assert_eq!(leading_digits(&int(45), 5), ("45000".into(), 1));
    }
}
