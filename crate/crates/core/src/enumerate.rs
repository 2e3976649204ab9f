//! Bounded exhaustive search for Chern data `(lattice, r, k)` with
//! `(3k² + 4k − 1)·r⁴·d = N`.
//!
//! Each grid point fixes `⟨c1⁴⟩ = r⁴d`, which turns the target relation into
//! a quadratic in `k` that is solved exactly over `Q`.

use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{rat_int, solve_quadratic_rational, to_integer, Rat};
use crate::error::{Error, Result};
use crate::ring::{ChernCase, FourfoldGeometry};
use crate::rr::DerivedInvariants;

/// Environment variable capping enumeration worker threads.
pub const THREADS_ENV: &str = "CHERN_GATE_THREADS";

/// Inclusive parameter ranges for each lattice model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum LatticeBounds {
    Rank1 { e: [u64; 2] },
    Rank2 { a: [u64; 2], b: [u64; 2] },
    Free { d: [u64; 2] },
}

impl LatticeBounds {
    pub fn points(&self) -> Vec<FourfoldGeometry> {
        let span = |r: [u64; 2]| r[0]..=r[1];
        match *self {
            LatticeBounds::Rank1 { e } => span(e).map(|e| FourfoldGeometry::Rank1 { e }).collect(),
            LatticeBounds::Rank2 { a, b } => span(a)
                .flat_map(|a| span(b).map(move |b| FourfoldGeometry::Rank2 { a, b }))
                .collect(),
            LatticeBounds::Free { d } => span(d).map(|d| FourfoldGeometry::Free { d }).collect(),
        }
    }

    fn ranges(&self) -> Vec<(&'static str, [u64; 2])> {
        match *self {
            LatticeBounds::Rank1 { e } => vec![("e", e)],
            LatticeBounds::Rank2 { a, b } => vec![("a", a), ("b", b)],
            LatticeBounds::Free { d } => vec![("d", d)],
        }
    }
}

/// Integrality condition on the canonical denominator `l` of `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisibilityRule {
    /// `l | e·r²`
    #[serde(rename = "l_div_er2")]
    LDivER2,
    /// `l | a·r²` and `l | b·r²`
    #[serde(rename = "l_div_ar2_br2")]
    LDivAR2BR2,
    /// `l² | d·r⁴`
    #[serde(rename = "l2_div_dr4")]
    L2DivDR4,
}

impl DivisibilityRule {
    pub fn holds(&self, geometry: &FourfoldGeometry, r: i64, l: &BigInt) -> bool {
        let r2 = BigInt::from(r) * r;
        match (self, geometry) {
            (DivisibilityRule::LDivER2, FourfoldGeometry::Rank1 { e }) => {
                (BigInt::from(*e) * &r2).is_multiple_of(l)
            }
            (DivisibilityRule::LDivAR2BR2, FourfoldGeometry::Rank2 { a, b }) => {
                (BigInt::from(*a) * &r2).is_multiple_of(l)
                    && (BigInt::from(*b) * &r2).is_multiple_of(l)
            }
            (DivisibilityRule::L2DivDR4, g) => (g.degree() * &r2 * &r2).is_multiple_of(&(l * l)),
            _ => false,
        }
    }

    fn accepts(&self, bounds: &LatticeBounds) -> bool {
        matches!(
            (self, bounds),
            (DivisibilityRule::LDivER2, LatticeBounds::Rank1 { .. })
                | (DivisibilityRule::LDivAR2BR2, LatticeBounds::Rank2 { .. })
                | (DivisibilityRule::L2DivDR4, _)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub target_n: i64,
    /// Inclusive range for `r`; never contains zero.
    pub r_range: [i64; 2],
    pub lattice: LatticeBounds,
    /// Strict lower bound `k > k_lower`, when present.
    pub k_lower: Option<Rat>,
    pub divisibility: DivisibilityRule,
    /// Inclusive upper bound on `⟨c1⁴⟩ = r⁴d`, when present.
    pub c1_fourth_max: Option<i64>,
}

impl ConstraintSystem {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.r_range;
        if lo > hi {
            return Err(Error::scenario("r_bounds", "lower bound exceeds upper bound"));
        }
        if lo <= 0 && hi >= 0 {
            return Err(Error::scenario("r_bounds", "range must exclude zero"));
        }
        for (name, [a, b]) in self.lattice.ranges() {
            if a > b {
                return Err(Error::scenario(
                    format!("lattice.{name}"),
                    "lower bound exceeds upper bound",
                ));
            }
        }
        if !self.divisibility.accepts(&self.lattice) {
            return Err(Error::scenario(
                "divisibility",
                "rule does not apply to this lattice model",
            ));
        }
        if matches!(self.c1_fourth_max, Some(m) if m < 0) {
            return Err(Error::scenario("c1_fourth_max", "must be non-negative"));
        }
        Ok(())
    }

    /// The bound on `⟨c1⁴⟩` implied by `k > k_lower`: since `3k² + 4k − 1`
    /// increases for `k ≥ −2/3`, `⟨c1⁴⟩ ≤ ⌊N / (3k₀² + 4k₀ − 1)⌋`.
    pub fn derived_c1_fourth_bound(&self) -> Option<i64> {
        let k0 = self.k_lower.as_ref()?;
        if *k0 < Rat::new(BigInt::from(-2), BigInt::from(3)) {
            return None;
        }
        let f = rat_int(3) * k0 * k0 + rat_int(4) * k0 - rat_int(1);
        if !f.is_positive() || self.target_n <= 0 {
            return None;
        }
        let bound = (rat_int(self.target_n) / f).floor().to_integer();
        i64::try_from(bound).ok()
    }

    /// Copy of the system with the derived `⟨c1⁴⟩` bound applied on top of
    /// any existing one.
    pub fn tightened(&self) -> Self {
        let mut out = self.clone();
        if let Some(t) = self.derived_c1_fourth_bound() {
            out.c1_fourth_max = Some(out.c1_fourth_max.map_or(t, |m| m.min(t)));
        }
        out
    }

    /// Every `(lattice point, r)` pair in the search space, in sorted order.
    pub fn grid(&self) -> Vec<(FourfoldGeometry, i64)> {
        let [lo, hi] = self.r_range;
        self.lattice
            .points()
            .into_iter()
            .flat_map(|g| (lo..=hi).map(move |r| (g, r)))
            .collect()
    }
}

/// One solution of the constraint system; `id` is its 1-based position in
/// the sorted output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSolution {
    pub id: usize,
    pub geometry: FourfoldGeometry,
    pub r: i64,
    #[serde(with = "crate::io::rat_str")]
    pub k: Rat,
}

impl CaseSolution {
    pub fn degree(&self) -> BigInt {
        self.geometry.degree()
    }

    pub fn to_case(&self, inv: &DerivedInvariants) -> ChernCase {
        ChernCase {
            r: self.r,
            k: self.k.clone(),
            c1c3_top: inv.c1c3,
            euler: inv.chi,
            geometry: self.geometry,
        }
    }

    fn sort_key(&self) -> (Vec<u64>, i64, Rat) {
        (self.geometry.params(), self.r, self.k.clone())
    }
}

/// Solutions at a single grid point, before ids are assigned.
pub fn solve_grid_point(
    sys: &ConstraintSystem,
    geometry: FourfoldGeometry,
    r: i64,
) -> Result<Vec<CaseSolution>> {
    let d = geometry.degree();
    if d.is_zero() || r == 0 {
        return Ok(Vec::new());
    }
    let c1_fourth = BigInt::from(r).pow(4) * d;
    if let Some(max) = sys.c1_fourth_max {
        if c1_fourth > BigInt::from(max) {
            return Ok(Vec::new());
        }
    }
    // 3k² + 4k − (1 + N/⟨c1⁴⟩) = 0
    let constant = -(rat_int(1) + Rat::new(BigInt::from(sys.target_n), c1_fourth));
    let roots = solve_quadratic_rational(&rat_int(3), &rat_int(4), &constant)?;
    Ok(roots
        .into_iter()
        .filter(|k| sys.k_lower.as_ref().is_none_or(|lo| k > lo))
        .filter(|k| sys.divisibility.holds(&geometry, r, k.denom()))
        .map(|k| CaseSolution {
            id: 0,
            geometry,
            r,
            k,
        })
        .collect())
}

/// Sorts by `(lattice params, r, k)` and assigns ids.
pub fn finalize(mut found: Vec<CaseSolution>) -> Vec<CaseSolution> {
    found.sort_by_key(CaseSolution::sort_key);
    found.dedup_by(|a, b| a.sort_key() == b.sort_key());
    for (i, s) in found.iter_mut().enumerate() {
        s.id = i + 1;
    }
    found
}

pub fn default_workers() -> usize {
    let available = thread::available_parallelism().map_or(1, |n| n.get());
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
        .map_or(available.min(8), |cap| cap.min(available.max(1)))
}

pub fn enumerate_cases(sys: &ConstraintSystem) -> Result<Vec<CaseSolution>> {
    enumerate_cases_with_workers(sys, default_workers())
}

/// Grid point `i` goes to worker `i mod workers`; results are merged and sorted.
pub fn enumerate_cases_with_workers(
    sys: &ConstraintSystem,
    workers: usize,
) -> Result<Vec<CaseSolution>> {
    sys.validate()?;
    let grid = sys.grid();
    let workers = workers.clamp(1, grid.len().max(1));
    let chunks: Vec<Result<Vec<CaseSolution>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let grid = &grid;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for (geometry, r) in grid.iter().skip(w).step_by(workers) {
                        out.extend(solve_grid_point(sys, *geometry, *r)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut found = Vec::new();
    for chunk in chunks {
        found.extend(chunk?);
    }
    Ok(finalize(found))
}

/// The characteristic numbers `⟨c1⁴⟩, ⟨c1c3⟩, ⟨c1²c2⟩, ⟨c2²⟩, ⟨c4⟩`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharNumbers {
    #[serde_as(as = "DisplayFromStr")]
    pub c1_4: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub c1c3: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub c1sq_c2: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub c2_sq: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub c4: BigInt,
}

impl CharNumbers {
    pub const COLUMNS: [&'static str; 5] = ["c1^4", "c1c3", "c1^2c2", "c2^2", "c4"];

    pub fn values(&self) -> [&BigInt; 5] {
        [&self.c1_4, &self.c1c3, &self.c1sq_c2, &self.c2_sq, &self.c4]
    }
}

pub fn char_number_table(sol: &CaseSolution, inv: &DerivedInvariants) -> Result<CharNumbers> {
    let c1_4 = BigInt::from(sol.r).pow(4) * sol.degree();
    let c14 = Rat::from_integer(c1_4.clone());
    Ok(CharNumbers {
        c1sq_c2: to_integer(&(&sol.k * &c14), "<c1^2 c2>")?,
        c2_sq: to_integer(&(&sol.k * &sol.k * &c14), "<c2^2>")?,
        c1_4,
        c1c3: BigInt::from(inv.c1c3),
        c4: BigInt::from(inv.chi),
    })
}
