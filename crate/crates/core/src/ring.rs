//! The truncated ring `Q[g]/(g^5)` that carries total Chern classes of a
//! fourfold, together with the pairing against the fundamental class and the
//! normal-bundle computation for an embedding into `P^8`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, Rat};
use crate::error::{Error, Result};

/// Top degree of the ring; `g^5 = 0`.
pub const TOP: usize = 4;

/// Dimension of the ambient projective space.
pub const AMBIENT_DIM: u32 = 8;

/// An element `q0 + q1·g + q2·g² + q3·g³ + q4·g⁴`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedClass {
    coeffs: [Rat; TOP + 1],
}

impl GradedClass {
    pub fn new(coeffs: [Rat; TOP + 1]) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: [i64; TOP + 1]) -> Self {
        Self::new(coeffs.map(rat_int))
    }

    pub fn unit() -> Self {
        Self::from_ints([1, 0, 0, 0, 0])
    }

    pub fn zero() -> Self {
        Self::from_ints([0; TOP + 1])
    }

    /// `1 + g·coefficient`, the total Chern class of a line bundle.
    pub fn linear(coefficient: Rat) -> Self {
        let mut c = Self::unit();
        c.coeffs[1] = coefficient;
        c
    }

    pub fn coeff(&self, degree: usize) -> &Rat {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[Rat; TOP + 1] {
        &self.coeffs
    }

    /// The homogeneous part of the given degree, as a class.
    pub fn part(&self, degree: usize) -> Self {
        let mut out = Self::zero();
        out.coeffs[degree] = self.coeffs[degree].clone();
        out
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        Self::new(self.coeffs.clone().map(|c| c * factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (o, c) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o += c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    /// Product truncated above degree four.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..=TOP {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=TOP - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::unit(), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        if lead.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut inv = Self::zero();
        inv.coeffs[0] = lead.recip();
        for n in 1..=TOP {
            let mut acc = Rat::zero();
            for j in 1..=n {
                acc += &self.coeffs[j] * &inv.coeffs[n - j];
            }
            inv.coeffs[n] = -acc / lead;
        }
        Ok(inv)
    }

    /// `⟨u, [X]⟩`: only the degree-four part pairs nontrivially.
    pub fn top_pairing(&self, geom: &FourfoldGeometry) -> Rat {
        &self.coeffs[TOP] * Rat::from_integer(geom.degree())
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        GradedClass::mul(self, rhs)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Lattice data fixing the degree `d = ⟨g⁴, [X]⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum FourfoldGeometry {
    /// `g² = e·x` with `x` generating `H⁴`, so `d = e²`.
    Rank1 { e: u64 },
    /// `g² = a·x + b·y` in an orthonormal basis of `H⁴`, so `d = a² + b²`.
    Rank2 { a: u64, b: u64 },
    /// Degree given directly.
    Free { d: u64 },
}

impl FourfoldGeometry {
    pub fn degree(&self) -> BigInt {
        let d = match *self {
            FourfoldGeometry::Rank1 { e } => e * e,
            FourfoldGeometry::Rank2 { a, b } => a * a + b * b,
            FourfoldGeometry::Free { d } => d,
        };
        BigInt::from(d)
    }

    /// Lattice parameters in the order used for sorting and display.
    pub fn params(&self) -> Vec<u64> {
        match *self {
            FourfoldGeometry::Rank1 { e } => vec![e],
            FourfoldGeometry::Rank2 { a, b } => vec![a, b],
            FourfoldGeometry::Free { d } => vec![d],
        }
    }
}

impl fmt::Display for FourfoldGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FourfoldGeometry::Rank1 { e } => write!(f, "e={e}"),
            FourfoldGeometry::Rank2 { a, b } => write!(f, "a={a}, b={b}"),
            FourfoldGeometry::Free { d } => write!(f, "d={d}"),
        }
    }
}

/// Numerical Chern data of a candidate fourfold:
/// `c1 = r·g`, `c2 = k·c1²`, `⟨c1c3⟩ = c1c3_top`, `⟨c4⟩ = euler`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCase {
    pub r: i64,
    pub k: Rat,
    pub c1c3_top: i64,
    pub euler: i64,
    pub geometry: FourfoldGeometry,
}

impl ChernCase {
    pub fn degree(&self) -> BigInt {
        self.geometry.degree()
    }

    /// `⟨c1⁴, [X]⟩ = r⁴·d`.
    pub fn c1_fourth(&self) -> BigInt {
        BigInt::from(self.r).pow(4) * self.degree()
    }
}

/// Total Chern class `1 + rg + kr²g² + (c1c3/(rd))g³ + (χ/d)g⁴`.
pub fn chern_from_case(case: &ChernCase) -> Result<GradedClass> {
    if case.r == 0 {
        return Err(Error::InvalidInput("c1 = r·g requires r ≠ 0".into()));
    }
    let d = case.degree();
    if d.is_zero() {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let d = Rat::from_integer(d);
    let r = rat_int(case.r);
    Ok(GradedClass::new([
        Rat::one(),
        r.clone(),
        &case.k * &r * &r,
        rat_int(case.c1c3_top) / (&r * &d),
        rat_int(case.euler) / &d,
    ]))
}

/// `i*c(P⁸) = (1 + m·g)⁹`, truncated.
pub fn ambient_pullback(m: i64) -> Result<GradedClass> {
    if m < 1 {
        return Err(Error::InvalidInput(format!(
            "hyperplane multiplier must be positive, got {m}"
        )));
    }
    Ok(GradedClass::linear(rat_int(m)).pow(AMBIENT_DIM + 1))
}

/// Coefficients of `(1 + m·g)⁹` as monomials in `m`: entry `j` is `C(9, j)`,
/// attached to `m^j g^j`.
pub fn ambient_pullback_symbolic() -> [BigInt; TOP + 1] {
    let mut out: [BigInt; TOP + 1] = Default::default();
    let mut binom = BigInt::one();
    let n = BigInt::from(AMBIENT_DIM + 1);
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = binom.clone();
        binom = binom * (&n - j) / (j + 1);
    }
    out
}

/// `c(N_X) = i*c(P⁸) · c(X)⁻¹` at a fixed multiplier.
pub fn normal_class(case: &ChernCase, m: i64) -> Result<GradedClass> {
    Ok(ambient_pullback(m)?.mul(&chern_from_case(case)?.inverse()?))
}

/// Univariate polynomial in the multiplier `m`; `coeffs[i]` multiplies `m^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn eval(&self, m: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * m + c)
    }

    pub fn coeff(&self, power: usize) -> Rat {
        self.coeffs.get(power).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}·m"),
                _ => format!("{c}·m^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// `⟨c4(N_X), [X]⟩` as a degree-four polynomial in `m`.
///
/// Writing `s = c(X)⁻¹`, the degree-four part of `(1 + mg)⁹·s` is
/// `Σ_j C(9, j)·m^j·s_{4-j}`, and pairing multiplies by `d`.
pub fn normal_c4_polynomial(case: &ChernCase) -> Result<RatPoly> {
    let inv = chern_from_case(case)?.inverse()?;
    let d = Rat::from_integer(case.degree());
    let binom = ambient_pullback_symbolic();
    let coeffs = (0..=TOP)
        .map(|j| Rat::from_integer(binom[j].clone()) * inv.coeff(TOP - j) * &d)
        .collect();
    Ok(RatPoly { coeffs })
}
