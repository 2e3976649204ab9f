//! Embedding obstruction polynomials and the certificates that rule them out.
//!
//! An embedding `X ⊂ P⁸` with `i*t = m·g` forces two computations of
//! `χ(N_X)` to agree: the degree-four part of `c(N_X) = i*c(P⁸)/c(X)` and the
//! self-intersection `d²m⁸`. Their difference, with denominators cleared, is
//! the integer polynomial [`IntPoly`] built here. A [`Certificate`] records
//! why it has no positive integer root (or that it has one), with enough
//! data to be checked again by [`verify_certificate`].
//!
//! The same certificate type also carries the non-polynomial eliminations:
//! the mod-12 congruence, Â-integrality on spin manifolds, and cited
//! classification facts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{
    is_integral, lcm_of_denominators, polynomial_content, positive_divisors, Rat,
};
use crate::enumerate::{CaseSolution, CharNumbers};
use crate::error::{Error, Result};
use crate::ring::{normal_c4_polynomial, ChernCase, AMBIENT_DIM};
use crate::rr::pontryagin_numbers;

pub const DEFAULT_MAX_MODULUS: u64 = 720;

/// Longest range `1..=B` the exhaustive strategy will scan by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 2_000_000;

/// Integer polynomial in `m`; `coeffs[i]` multiplies `m^i`.
///
/// `scale` is the positive factor by which a rational form was multiplied to
/// clear denominators (1 for polynomials given directly).
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly {
    /// Leading coefficient first.
    #[serde_as(as = "Vec<DisplayFromStr>")]
    #[serde(rename = "coefficients")]
    descending: Vec<BigInt>,
    #[serde_as(as = "DisplayFromStr")]
    pub scale: BigInt,
}

impl IntPoly {
    /// From coefficients listed leading term first; leading zeros are dropped.
    pub fn from_descending(coeffs: Vec<BigInt>) -> Self {
        let start = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        let mut descending = coeffs[start..].to_vec();
        if descending.is_empty() {
            descending.push(BigInt::zero());
        }
        Self {
            descending,
            scale: BigInt::one(),
        }
    }

    pub fn from_i64_descending(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_ascending(mut coeffs: Vec<BigInt>, scale: BigInt) -> Self {
        coeffs.reverse();
        let mut p = Self::from_descending(coeffs);
        p.scale = scale;
        p
    }

    pub fn descending(&self) -> &[BigInt] {
        &self.descending
    }

    /// Coefficient of `m^power`.
    pub fn coeff(&self, power: usize) -> BigInt {
        let n = self.descending.len();
        if power >= n {
            BigInt::zero()
        } else {
            self.descending[n - 1 - power].clone()
        }
    }

    pub fn degree(&self) -> usize {
        self.descending.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.descending.iter().all(Zero::is_zero)
    }

    pub fn leading(&self) -> &BigInt {
        &self.descending[0]
    }

    pub fn eval(&self, m: &BigInt) -> BigInt {
        self.descending
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * m + c)
    }

    /// `P(x) mod modulus`, in `0..modulus`.
    pub fn eval_mod(&self, x: u64, modulus: u64) -> u64 {
        let m = BigInt::from(modulus);
        let reduced: Vec<u64> = self
            .descending
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue fits"))
            .collect();
        horner_mod(&reduced, x, modulus)
    }

    /// Divides every coefficient by `divisor`, which must divide them all.
    pub fn divide_exact(&self, divisor: &BigInt) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.descending.iter().any(|c| !c.is_multiple_of(divisor)) {
            return Err(Error::InvalidInput(format!(
                "{divisor} does not divide every coefficient"
            )));
        }
        Ok(Self {
            descending: self.descending.iter().map(|c| c / divisor).collect(),
            scale: self.scale.clone(),
        })
    }

    /// Removes the largest power `m^s` dividing the polynomial.
    pub fn strip_zero_roots(&self) -> (Self, u32) {
        let mut descending = self.descending.clone();
        let mut s = 0;
        while descending.len() > 1 && descending.last().is_some_and(Zero::is_zero) {
            descending.pop();
            s += 1;
        }
        (
            Self {
                descending,
                scale: self.scale.clone(),
            },
            s,
        )
    }

    /// `⌊1 + max_{i<n} |cᵢ| / |cₙ|⌋`; every root has absolute value at most this.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let max = self.descending[1..]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero);
        BigInt::one() + max / lead
    }

    fn negated(&self) -> Self {
        Self {
            descending: self.descending.iter().map(|c| -c).collect(),
            scale: self.scale.clone(),
        }
    }

    /// Same roots, positive leading coefficient. Certificates always refer
    /// to this form.
    pub fn normalized(&self) -> Self {
        if self.leading().is_negative() {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.descending.iter().enumerate() {
            if c.is_zero() && n > 0 {
                continue;
            }
            let power = n - i;
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}m")?,
                _ => write!(f, "{mag}m^{power}")?,
            }
        }
        Ok(())
    }
}

fn horner_mod(reduced: &[u64], x: u64, modulus: u64) -> u64 {
    let (x, m) = (u128::from(x % modulus), u128::from(modulus));
    reduced
        .iter()
        .fold(0u128, |acc, &c| (acc * x + u128::from(c)) % m) as u64
}

/// `scale·d²m⁸ − scale·⟨c4(N_X)⟩(m)`, with `scale` the lcm of denominators.
pub fn build_embedding_polynomial(case: &ChernCase) -> Result<IntPoly> {
    let c4n = normal_c4_polynomial(case)?;
    let d = case.degree();
    let mut rational: Vec<Rat> = vec![Rat::zero(); AMBIENT_DIM as usize + 1];
    rational[AMBIENT_DIM as usize] = Rat::from_integer(&d * &d);
    for (i, c) in c4n.coeffs.iter().enumerate() {
        rational[i] -= c;
    }
    let scale = lcm_of_denominators(&rational);
    let ascending = rational
        .iter()
        .map(|c| (c * Rat::from_integer(scale.clone())).to_integer())
        .collect();
    Ok(IntPoly::from_ascending(ascending, scale))
}

/// What a classification fact asserts about the degree for one index.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactConstraint {
    DegreeIn { values: Vec<u64> },
    DegreeAtMost { value: u64 },
    ConcludesP4,
}

impl fmt::Display for FactConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactConstraint::DegreeIn { values } => {
                let v: Vec<String> = values.iter().map(u64::to_string).collect();
                write!(f, "d in {{{}}}", v.join(", "))
            }
            FactConstraint::DegreeAtMost { value } => write!(f, "d <= {value}"),
            FactConstraint::ConcludesP4 => write!(f, "X is P^4"),
        }
    }
}

/// A cited result about Fano fourfolds of a given index `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalFact {
    pub index: i64,
    pub constraint: FactConstraint,
    pub citation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactEffect {
    Eliminates,
    ConcludesP4,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// `P/content` is nonzero modulo `modulus` at every residue.
    Modular {
        #[serde_as(as = "DisplayFromStr")]
        content: BigInt,
        modulus: u64,
        residues: Vec<u64>,
    },
    /// After dividing by `content` and by `m^stripped_power`, every positive
    /// integer root divides `constant`; none of its divisors is a root.
    #[serde(rename = "divisor")]
    ConstantDivisor {
        #[serde_as(as = "DisplayFromStr")]
        content: BigInt,
        stripped_power: u32,
        #[serde_as(as = "DisplayFromStr")]
        constant: BigInt,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        divisors: Vec<BigInt>,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        values: Vec<BigInt>,
    },
    /// `P(m) ≠ 0` for `1 ≤ m ≤ bound`, and `bound` dominates the Cauchy bound.
    #[serde(rename = "exhaustive")]
    BoundedExhaustive {
        #[serde_as(as = "DisplayFromStr")]
        bound: BigInt,
    },
    RootFound {
        #[serde_as(as = "DisplayFromStr")]
        root: BigInt,
    },
    /// `⟨c1²c2 + 2c1⁴⟩ = value`, which is not divisible by 12.
    CongruenceMod12 {
        #[serde_as(as = "DisplayFromStr")]
        value: BigInt,
        residue: u64,
    },
    AhatNonIntegral {
        #[serde(with = "crate::io::rat_str")]
        value: Rat,
    },
    ExternalFact {
        index: i64,
        citation: String,
        constraint: FactConstraint,
        #[serde_as(as = "DisplayFromStr")]
        degree: BigInt,
        effect: FactEffect,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Modular { .. } => "modular",
            Certificate::ConstantDivisor { .. } => "divisor",
            Certificate::BoundedExhaustive { .. } => "exhaustive",
            Certificate::RootFound { .. } => "root_found",
            Certificate::CongruenceMod12 { .. } => "congruence_mod12",
            Certificate::AhatNonIntegral { .. } => "ahat_non_integral",
            Certificate::ExternalFact { .. } => "external_fact",
        }
    }

    /// Whether the certificate shows a polynomial has no positive integer root.
    pub fn is_no_root(&self) -> bool {
        matches!(
            self,
            Certificate::Modular { .. }
                | Certificate::ConstantDivisor { .. }
                | Certificate::BoundedExhaustive { .. }
        )
    }

    /// Modular certificate for `P/content` at a chosen modulus. The residue
    /// table is filled in whether or not it proves anything.
    pub fn modular_for(p: &IntPoly, content: &BigInt, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidInput("modulus must be at least 2".into()));
        }
        let q = p.normalized().divide_exact(content)?;
        let residues = (0..modulus).map(|x| q.eval_mod(x, modulus)).collect();
        Ok(Certificate::Modular {
            content: content.clone(),
            modulus,
            residues,
        })
    }

    /// Divisor-test certificate for `P/content`, evaluating at every positive
    /// divisor of the lowest nonzero coefficient.
    pub fn divisor_for(p: &IntPoly, content: &BigInt) -> Result<Self> {
        let (q, stripped_power) = p.normalized().divide_exact(content)?.strip_zero_roots();
        let constant = q.coeff(0);
        let divisors = positive_divisors(&constant).ok_or_else(|| {
            Error::Inconclusive(format!("cannot enumerate divisors of {constant}"))
        })?;
        let values = divisors.iter().map(|m| q.eval(m)).collect();
        Ok(Certificate::ConstantDivisor {
            content: content.clone(),
            stripped_power,
            constant,
            divisors,
            values,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Modular {
                content, modulus, ..
            } => write!(f, "content {content}, nonzero mod {modulus} at every residue"),
            Certificate::ConstantDivisor {
                content,
                constant,
                divisors,
                ..
            } => {
                let d: Vec<String> = divisors.iter().map(BigInt::to_string).collect();
                write!(
                    f,
                    "content {content}, roots must divide {constant}; none of {{{}}} is a root",
                    d.join(", ")
                )
            }
            Certificate::BoundedExhaustive { bound } => {
                write!(f, "no root in 1..={bound} (Cauchy bound)")
            }
            Certificate::RootFound { root } => write!(f, "positive integer root m = {root}"),
            Certificate::CongruenceMod12 { value, residue } => {
                write!(f, "<c1^2c2 + 2c1^4> = {value} is {residue} mod 12")
            }
            Certificate::AhatNonIntegral { value } => {
                write!(f, "A-hat genus {value} is not an integer on a spin manifold")
            }
            Certificate::ExternalFact {
                index,
                constraint,
                degree,
                effect,
                ..
            } => match effect {
                FactEffect::Eliminates => {
                    write!(f, "index {index} requires {constraint}; d = {degree}")
                }
                FactEffect::ConcludesP4 => write!(f, "index {index}: {constraint}"),
            },
        }
    }
}

fn no_root_search(
    q: &IntPoly,
    content: &BigInt,
    max_modulus: u64,
    exhaustive_limit: u64,
) -> Result<Certificate> {
    for modulus in 2..=max_modulus {
        let mb = BigInt::from(modulus);
        let reduced: Vec<u64> = q
            .descending
            .iter()
            .map(|c| c.mod_floor(&mb).to_u64().expect("residue fits"))
            .collect();
        let residues: Vec<u64> = (0..modulus)
            .map(|x| horner_mod(&reduced, x, modulus))
            .collect();
        if residues.iter().all(|&r| r != 0) {
            return Ok(Certificate::Modular {
                content: content.clone(),
                modulus,
                residues,
            });
        }
    }

    let (stripped, stripped_power) = q.strip_zero_roots();
    let constant = stripped.coeff(0);
    if let Some(divisors) = positive_divisors(&constant) {
        let values: Vec<BigInt> = divisors.iter().map(|m| stripped.eval(m)).collect();
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Ok(Certificate::RootFound {
                root: divisors[i].clone(),
            });
        }
        return Ok(Certificate::ConstantDivisor {
            content: content.clone(),
            stripped_power,
            constant,
            divisors,
            values,
        });
    }

    let bound = q.cauchy_bound();
    match bound.to_u64() {
        Some(b) if b <= exhaustive_limit => {
            for m in 1..=b {
                if stripped.eval(&BigInt::from(m)).is_zero() {
                    return Ok(Certificate::RootFound {
                        root: BigInt::from(m),
                    });
                }
            }
            Ok(Certificate::BoundedExhaustive { bound })
        }
        _ => Err(Error::Inconclusive(format!(
            "no modulus up to {max_modulus}, constant {constant} too large to factor, \
             Cauchy bound {bound} exceeds scan limit {exhaustive_limit}"
        ))),
    }
}

/// Searches for a certificate that `p` has no positive integer root, trying
/// in order: a modulus in `2..=max_modulus`, the divisors of the constant
/// term, and an exhaustive scan up to the Cauchy bound (at most
/// `search_override` values, default [`DEFAULT_EXHAUSTIVE_LIMIT`]).
/// Returns [`Certificate::RootFound`] if a positive root turns up.
pub fn eliminate(p: &IntPoly, max_modulus: u64, search_override: Option<u64>) -> Result<Certificate> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let p = p.normalized();
    let content = polynomial_content(&p.descending)?;
    let q = p.divide_exact(&content)?;
    no_root_search(
        &q,
        &content,
        max_modulus,
        search_override.unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT),
    )
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection(pub String);

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn reject<T>(reason: impl Into<String>) -> std::result::Result<T, Rejection> {
    Err(Rejection(reason.into()))
}

/// Re-derives a polynomial certificate's claims from its own data.
pub fn check_certificate(p: &IntPoly, cert: &Certificate) -> std::result::Result<(), Rejection> {
    if p.is_zero() {
        return reject("zero polynomial has every root");
    }
    let p = &p.normalized();
    let reduce = |content: &BigInt| {
        if !content.is_positive() {
            return reject(format!("content {content} is not positive"));
        }
        p.divide_exact(content)
            .or_else(|_| reject(format!("{content} does not divide every coefficient")))
    };
    match cert {
        Certificate::Modular {
            content,
            modulus,
            residues,
        } => {
            if *modulus < 2 {
                return reject("modulus must be at least 2");
            }
            let q = reduce(content)?;
            if residues.len() as u64 != *modulus {
                return reject(format!(
                    "residue table has {} entries, expected {modulus}",
                    residues.len()
                ));
            }
            for (x, &claimed) in residues.iter().enumerate() {
                let actual = q.eval_mod(x as u64, *modulus);
                if actual != claimed {
                    return reject(format!(
                        "residue at {x} is {actual}, certificate claims {claimed}"
                    ));
                }
                if actual == 0 {
                    return reject(format!("P/{content} vanishes mod {modulus} at {x}"));
                }
            }
            Ok(())
        }
        Certificate::ConstantDivisor {
            content,
            stripped_power,
            constant,
            divisors,
            values,
        } => {
            let (q, s) = reduce(content)?.strip_zero_roots();
            if s != *stripped_power {
                return reject(format!("stripped power is {s}, certificate claims {stripped_power}"));
            }
            if q.coeff(0) != *constant {
                return reject(format!(
                    "constant term is {}, certificate claims {constant}",
                    q.coeff(0)
                ));
            }
            let Some(all) = positive_divisors(constant) else {
                return reject(format!("cannot enumerate divisors of {constant}"));
            };
            if *divisors != all {
                return reject("divisor list is not the full set of positive divisors");
            }
            if values.len() != divisors.len() {
                return reject("one value per divisor required");
            }
            for (m, v) in divisors.iter().zip(values) {
                let actual = q.eval(m);
                if actual != *v {
                    return reject(format!("value at {m} is {actual}, certificate claims {v}"));
                }
                if actual.is_zero() {
                    return reject(format!("{m} is a root"));
                }
            }
            Ok(())
        }
        Certificate::BoundedExhaustive { bound } => {
            if *bound < p.cauchy_bound() {
                return reject(format!(
                    "bound {bound} is below the Cauchy bound {}",
                    p.cauchy_bound()
                ));
            }
            let Some(b) = bound.to_u64() else {
                return reject("bound too large to rescan");
            };
            let (q, _) = p.strip_zero_roots();
            if let Some(m) = (1..=b).find(|&m| q.eval(&BigInt::from(m)).is_zero()) {
                return reject(format!("{m} is a root"));
            }
            Ok(())
        }
        Certificate::RootFound { root } => {
            if !root.is_positive() {
                return reject("root must be a positive integer");
            }
            if !p.eval(root).is_zero() {
                return reject(format!("P({root}) = {} ≠ 0", p.eval(root)));
            }
            Ok(())
        }
        other => reject(format!("{} is not a polynomial certificate", other.kind())),
    }
}

pub fn verify_certificate(p: &IntPoly, cert: &Certificate) -> bool {
    check_certificate(p, cert).is_ok()
}

/// Eliminates the case when `⟨c1²c2 + 2c1⁴⟩ ≢ 0 (mod 12)`.
pub fn mod12_filter(cn: &CharNumbers) -> Option<Certificate> {
    let value = &cn.c1sq_c2 + BigInt::from(2) * &cn.c1_4;
    let residue = value.mod_floor(&BigInt::from(12)).to_u64()?;
    (residue != 0).then_some(Certificate::CongruenceMod12 { value, residue })
}

/// Eliminates a spin case (`r` even) whose Â-genus is not an integer.
pub fn ahat_filter(case: &ChernCase) -> Option<Certificate> {
    let pd = pontryagin_numbers(case);
    (pd.spin_applicable && !is_integral(&pd.a_hat))
        .then_some(Certificate::AhatNonIntegral { value: pd.a_hat })
}

/// Applies the first fact whose index equals the case's `r`.
pub fn external_fact_filter(sol: &CaseSolution, facts: &[ExternalFact]) -> Option<Certificate> {
    let fact = facts.iter().find(|f| f.index == sol.r)?;
    let degree = sol.degree();
    let make = |effect| Certificate::ExternalFact {
        index: fact.index,
        citation: fact.citation.clone(),
        constraint: fact.constraint.clone(),
        degree: degree.clone(),
        effect,
    };
    match &fact.constraint {
        FactConstraint::DegreeIn { values } => (!values.iter().any(|v| BigInt::from(*v) == degree))
            .then(|| make(FactEffect::Eliminates)),
        FactConstraint::DegreeAtMost { value } => {
            (degree > BigInt::from(*value)).then(|| make(FactEffect::Eliminates))
        }
        FactConstraint::ConcludesP4 => Some(make(FactEffect::ConcludesP4)),
    }
}

/// Data against which a filter certificate is re-checked.
pub struct FilterContext<'a> {
    pub solution: &'a CaseSolution,
    pub case: &'a ChernCase,
    pub numbers: &'a CharNumbers,
    pub facts: &'a [ExternalFact],
}

/// Re-derives a filter certificate from the case data.
pub fn check_filter_certificate(
    cert: &Certificate,
    ctx: &FilterContext<'_>,
) -> std::result::Result<(), Rejection> {
    let expected = match cert {
        Certificate::CongruenceMod12 { .. } => mod12_filter(ctx.numbers),
        Certificate::AhatNonIntegral { .. } => ahat_filter(ctx.case),
        Certificate::ExternalFact { .. } => external_fact_filter(ctx.solution, ctx.facts),
        other => return reject(format!("{} is not a filter certificate", other.kind())),
    };
    match expected {
        Some(e) if e == *cert => Ok(()),
        Some(e) => reject(format!("recomputed certificate differs: {e}")),
        None => reject("filter does not fire on this case"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rat_int};
    use crate::ring::FourfoldGeometry;

    fn lemma_a1() -> IntPoly {
        IntPoly::from_i64_descending(&[50625, 0, 0, 0, -28350, -18900, -2700, 225, 30])
    }

    #[test]
    fn builds_negative_rank1_polynomial() {
        let case = ChernCase {
            r: -1,
            k: rat(2, 3),
            c1c3_top: 50,
            euler: 5,
            geometry: FourfoldGeometry::Rank1 { e: 15 },
        };
        let p = build_embedding_polynomial(&case).unwrap();
        assert_eq!(p, lemma_a1());
        assert_eq!(p.scale, int(1));
    }

    #[test]
    fn builds_level_case_one() {
        let case = ChernCase {
            r: -4,
            k: rat(1, 2),
            c1c3_top: 112,
            euler: 16,
            geometry: FourfoldGeometry::Free { d: 3 },
        };
        let p = build_embedding_polynomial(&case).unwrap();
        assert_eq!(
            p,
            IntPoly::from_i64_descending(&[9, 0, 0, 0, -378, -1008, -864, -252, -16])
        );
    }

    #[test]
    fn p4_has_root_one() {
        let case = ChernCase {
            r: 5,
            k: rat(2, 5),
            c1c3_top: 50,
            euler: 5,
            geometry: FourfoldGeometry::Rank1 { e: 1 },
        };
        let p = build_embedding_polynomial(&case).unwrap();
        assert_eq!(p.eval(&int(1)), int(0));
        assert_eq!(eliminate(&p, 720, None).unwrap(), Certificate::RootFound { root: int(1) });
        let q = IntPoly::from_i64_descending(&[-3, 0, -1]);
        let cert = eliminate(&q, 720, None).unwrap();
        assert!(cert.is_no_root());
        assert!(verify_certificate(&q, &cert));
    }

    #[test]
    fn scale_clears_denominators() {
        let case = ChernCase {
            r: -5,
            k: rat(7, 10),
            c1c3_top: 48,
            euler: 6,
            geometry: FourfoldGeometry::Free { d: 3 },
        };
        let p = build_embedding_polynomial(&case).unwrap();
        let c4n = normal_c4_polynomial(&case).unwrap();
        let scale = Rat::from_integer(p.scale.clone());
        for m in 1..5i64 {
            let lhs = Rat::from_integer(p.eval(&int(m)));
            let d = Rat::from_integer(case.degree());
            let rhs = (&d * &d * rat_int(m).pow(8) - c4n.eval(&rat_int(m))) * &scale;
            assert_eq!(lhs, rhs);
        }
        assert!(p.scale > int(1));
    }

    #[test]
    fn a1_mod3() {
        let p = lemma_a1();
        let cert = eliminate(&p, DEFAULT_MAX_MODULUS, None).unwrap();
        match &cert {
            Certificate::Modular {
                content,
                modulus,
                residues,
            } => {
                assert_eq!((content.clone(), *modulus), (int(15), 3));
                assert_eq!(residues, &vec![2, 2, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_certificate(&p, &cert));
        let wrong = Certificate::modular_for(&p, &int(15), 2).unwrap();
        assert!(!verify_certificate(&p, &wrong));
    }

    #[test]
    fn monic_minus_one_has_root() {
        let p = IntPoly::from_i64_descending(&[1, 0, 0, 0, 0, 0, 0, 0, -1]);
        let cert = eliminate(&p, 720, None).unwrap();
        assert_eq!(cert, Certificate::RootFound { root: int(1) });
        assert!(verify_certificate(&p, &cert));
    }

    #[test]
    fn divisor_certificate_for_hodge_case_two() {
        let p = IntPoly::from_i64_descending(&[4, 0, 0, 0, -252, -168, 648, -90, -232]);
        let cert = Certificate::divisor_for(&p, &int(2)).unwrap();
        match &cert {
            Certificate::ConstantDivisor {
                divisors, values, ..
            } => {
                assert_eq!(divisors, &[1, 2, 4, 29, 58, 116].map(int).to_vec());
                assert_eq!(values[..3], [int(-45), int(-1086), int(98328)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_certificate(&p, &cert));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let p = lemma_a1();
        let Certificate::Modular {
            content,
            modulus,
            mut residues,
        } = eliminate(&p, 720, None).unwrap()
        else {
            panic!()
        };
        residues[1] = 1;
        let bad = Certificate::Modular {
            content: content.clone(),
            modulus,
            residues: residues.clone(),
        };
        assert!(check_certificate(&p, &bad).unwrap_err().0.contains("residue at 1"));
        let short = Certificate::Modular {
            content: int(7),
            modulus,
            residues,
        };
        assert!(!verify_certificate(&p, &short));
        assert!(!verify_certificate(&p, &Certificate::RootFound { root: int(1) }));
        assert!(!verify_certificate(
            &p,
            &Certificate::BoundedExhaustive { bound: int(0) }
        ));
    }

    #[test]
    fn zero_constant_is_stripped() {
        // m (m - 3)(m + 2) = m^3 - m^2 - 6m
        let p = IntPoly::from_i64_descending(&[1, -1, -6, 0]);
        assert_eq!(eliminate(&p, 10, None).unwrap(), Certificate::RootFound { root: int(3) });
        // m^2 (m^2 + 1): no positive root; no modulus rules it out since m = 0 is a root.
        let p = IntPoly::from_i64_descending(&[1, 0, 1, 0, 0]);
        let cert = eliminate(&p, 50, None).unwrap();
        match &cert {
            Certificate::ConstantDivisor { stripped_power, .. } => assert_eq!(*stripped_power, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_certificate(&p, &cert));
    }

    #[test]
    fn exhaustive_fallback() {
        // Constant term too large to factor but a small Cauchy bound; the
        // modular scan is disabled.
        let lead = BigInt::from(10u64).pow(15u32);
        let p = IntPoly::from_descending(vec![lead.clone(), int(0), -(&lead + int(37))]);
        let cert = eliminate(&p, 1, None).unwrap();
        assert_eq!(cert, Certificate::BoundedExhaustive { bound: int(2) });
        assert!(verify_certificate(&p, &cert));
        assert!(matches!(eliminate(&p, 1, Some(1)), Err(Error::Inconclusive(_))));
        assert!(eliminate(&IntPoly::from_i64_descending(&[0]), 3, None).is_err());
    }

    #[test]
    fn negative_leading_is_normalized() {
        let p = IntPoly::from_i64_descending(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(eliminate(&p, 720, None).unwrap(), Certificate::RootFound { root: int(1) });
    }

    #[test]
    fn mod12_examples() {
        let cn = |c1_4: i64, c1sq_c2: i64| CharNumbers {
            c1_4: int(c1_4),
            c1c3: int(48),
            c1sq_c2: int(c1sq_c2),
            c2_sq: int(0),
            c4: int(6),
        };
        assert_eq!(
            mod12_filter(&cn(81, 99)),
            Some(Certificate::CongruenceMod12 {
                value: int(261),
                residue: 9
            })
        );
        assert_eq!(mod12_filter(&cn(2, 20)), None);
        assert_eq!(mod12_filter(&cn(625, 250)), None);
    }

    #[test]
    fn ahat_examples() {
        let case = |d, r, k| ChernCase {
            r,
            k,
            c1c3_top: 112,
            euler: 16,
            geometry: FourfoldGeometry::Free { d },
        };
        assert_eq!(
            ahat_filter(&case(14, -2, rat_int(1))),
            Some(Certificate::AhatNonIntegral { value: rat(1, 4) })
        );
        assert_eq!(ahat_filter(&case(224, -1, rat_int(1))), None);
        assert_eq!(ahat_filter(&case(3, -4, rat(1, 2))), None);
    }

    #[test]
    fn fact_examples() {
        let facts = vec![
            ExternalFact {
                index: 1,
                constraint: FactConstraint::DegreeIn { values: vec![2, 4, 5] },
                citation: "index one".into(),
            },
            ExternalFact {
                index: 2,
                constraint: FactConstraint::DegreeAtMost { value: 22 },
                citation: "index two".into(),
            },
            ExternalFact {
                index: 5,
                constraint: FactConstraint::ConcludesP4,
                citation: "index five".into(),
            },
        ];
        let sol = |e, r| CaseSolution {
            id: 1,
            geometry: FourfoldGeometry::Rank1 { e },
            r,
            k: rat(1, 4),
        };
        let c = external_fact_filter(&sol(15, 1), &facts).unwrap();
        assert!(matches!(c, Certificate::ExternalFact { effect: FactEffect::Eliminates, .. }));
        let c = external_fact_filter(&sol(15, 2), &facts).unwrap();
        assert!(matches!(c, Certificate::ExternalFact { effect: FactEffect::Eliminates, .. }));
        let c = external_fact_filter(&sol(1, 5), &facts).unwrap();
        assert!(matches!(c, Certificate::ExternalFact { effect: FactEffect::ConcludesP4, .. }));
        assert!(external_fact_filter(&sol(2, 1), &facts).is_none());
        assert!(external_fact_filter(&sol(4, 2), &facts).is_none());
        assert!(external_fact_filter(&sol(4, 3), &facts).is_none());
    }
}
