//! Numerical invariants of a fourfold from its Hodge diamond, via the
//! dimension-four Riemann–Roch identities, plus Pontryagin numbers, the
//! Â-genus and the L-genus signature.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::ring::{ChernCase, FourfoldGeometry, GradedClass};

/// Hodge numbers `h[p][q]`, `0 ≤ p, q ≤ 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HodgeDiamond {
    pub h: [[u32; 5]; 5],
}

impl HodgeDiamond {
    pub fn new(h: [[u32; 5]; 5]) -> Result<Self> {
        let hd = Self { h };
        hd.validate()?;
        Ok(hd)
    }

    /// Builds a diamond with only `h^{p,p}` nonzero.
    pub fn diagonal(diag: [u32; 5]) -> Self {
        let mut h = [[0; 5]; 5];
        for (p, v) in diag.into_iter().enumerate() {
            h[p][p] = v;
        }
        Self { h }
    }

    pub fn projective_space() -> Self {
        Self::diagonal([1; 5])
    }

    pub fn validate(&self) -> Result<()> {
        for p in 0..5 {
            for q in 0..5 {
                if self.h[p][q] != self.h[q][p] {
                    return Err(Error::scenario(
                        format!("hodge[{p}][{q}]"),
                        format!(
                            "h^{{{p},{q}}} = {} but h^{{{q},{p}}} = {}",
                            self.h[p][q], self.h[q][p]
                        ),
                    ));
                }
                // Serre duality
                if self.h[p][q] != self.h[4 - p][4 - q] {
                    return Err(Error::scenario(
                        format!("hodge[{p}][{q}]"),
                        format!(
                            "h^{{{p},{q}}} = {} but h^{{{},{}}} = {}",
                            self.h[p][q],
                            4 - p,
                            4 - q,
                            self.h[4 - p][4 - q]
                        ),
                    ));
                }
            }
        }
        if self.h[0][0] != 1 {
            return Err(Error::scenario("hodge[0][0]", "must equal 1"));
        }
        Ok(())
    }

    pub fn betti(&self, degree: usize) -> u32 {
        (0..5)
            .filter_map(|p| degree.checked_sub(p).filter(|q| *q < 5).map(|q| self.h[p][q]))
            .sum()
    }
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Invariants read off the diamond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondInvariants {
    /// `Σ (−1)^{p+q} h^{p,q}`
    pub chi: i64,
    /// `Σ_q (−1)^q h^{0,q}`
    pub chi_o: i64,
    /// `Σ_q (−1)^q h^{1,q}`
    pub chi1: i64,
    /// `Σ (−1)^p h^{p,q}`
    pub sigma: i64,
}

/// Diamond invariants together with the Riemann–Roch consequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedInvariants {
    pub chi: i64,
    pub chi_o: i64,
    pub chi1: i64,
    pub sigma: i64,
    pub c1c3: i64,
    pub target_n: i64,
}

/// Returns `χ`, `χ(O)`, `χ¹` and the Hodge-index signature of the diamond.
pub fn invariants_from_diamond(hd: &HodgeDiamond) -> Result<DiamondInvariants> {
    hd.validate()?;
    let h = |p: usize, q: usize| i64::from(hd.h[p][q]);
    let mut chi = 0;
    let mut sigma = 0;
    for p in 0..5 {
        for q in 0..5 {
            chi += sign(p + q) * h(p, q);
            sigma += sign(p) * h(p, q);
        }
    }
    let chi_o = (0..5).map(|q| sign(q) * h(0, q)).sum();
    let chi1 = (0..5).map(|q| sign(q) * h(1, q)).sum();
    Ok(DiamondInvariants {
        chi,
        chi_o,
        chi1,
        sigma,
    })
}

/// Checks the signature count against `σ(P⁴) = 1` and `σ = 2` for the
/// diamond with `h^{2,2} = 2` and rank-one `H²`.
pub fn validate_signature_anchors() -> Result<()> {
    let anchors = [
        (HodgeDiamond::projective_space(), 1),
        (HodgeDiamond::diagonal([1, 1, 2, 1, 1]), 2),
    ];
    for (hd, want) in anchors {
        let got = invariants_from_diamond(&hd)?.sigma;
        if got != want {
            return Err(Error::Internal(format!(
                "signature anchor failed: expected {want}, got {got}"
            )));
        }
    }
    Ok(())
}

/// Solves `4χ(O) − χ¹ = ⟨2c4 + c1c3⟩/12` for `⟨c1c3⟩`, then the target
/// `N = 720χ(O) + χ − ⟨c1c3⟩` so that `(3k² + 4k − 1)⟨c1⁴⟩ = N`.
pub fn rr_target(inv: &DiamondInvariants) -> DerivedInvariants {
    let c1c3 = 12 * (4 * inv.chi_o - inv.chi1) - 2 * inv.chi;
    let target_n = 720 * inv.chi_o + inv.chi - c1c3;
    DerivedInvariants {
        chi: inv.chi,
        chi_o: inv.chi_o,
        chi1: inv.chi1,
        sigma: inv.sigma,
        c1c3,
        target_n,
    }
}

pub fn derive_invariants(hd: &HodgeDiamond) -> Result<DerivedInvariants> {
    Ok(rr_target(&invariants_from_diamond(hd)?))
}

/// `χ(X, O) = ⟨−c4 + c3c1 + 3c2² + 4c2c1² − c1⁴⟩ / 720`.
pub fn chi_o_from_class(c: &GradedClass, geom: &FourfoldGeometry) -> Rat {
    let c1 = c.part(1);
    let c2 = c.part(2);
    let c3 = c.part(3);
    let c4 = c.part(4);
    let integrand = c4
        .scale(&rat_int(-1))
        .add(&c3.mul(&c1))
        .add(&c2.mul(&c2).scale(&rat_int(3)))
        .add(&c2.mul(&c1).mul(&c1).scale(&rat_int(4)))
        .sub(&c1.pow(4));
    integrand.top_pairing(geom) / rat_int(720)
}

/// `(4χ(O) − χ¹)` recovered from the class: `⟨2c4 + c1c3⟩ / 12`.
pub fn chi_o_minus_chi1_from_class(c: &GradedClass, geom: &FourfoldGeometry) -> Rat {
    let integrand = c
        .part(4)
        .scale(&rat_int(2))
        .add(&c.part(1).mul(&c.part(3)));
    integrand.top_pairing(geom) / rat_int(12)
}

/// Pontryagin numbers of a case, `p1 = c1² − 2c2`, `p2 = c2² − 2c1c3 + 2c4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PontryaginData {
    #[serde(with = "crate::io::rat_str")]
    pub p1_sq: Rat,
    #[serde(with = "crate::io::rat_str")]
    pub p2: Rat,
    #[serde(with = "crate::io::rat_str")]
    pub a_hat: Rat,
    pub spin_applicable: bool,
}

pub fn pontryagin_numbers(case: &ChernCase) -> PontryaginData {
    let c1_4 = Rat::from_integer(case.c1_fourth());
    let one_minus_2k = rat_int(1) - rat_int(2) * &case.k;
    let p1_sq = &one_minus_2k * &one_minus_2k * &c1_4;
    let p2 = &case.k * &case.k * &c1_4 - rat_int(2 * case.c1c3_top) + rat_int(2 * case.euler);
    let mut pd = PontryaginData {
        p1_sq,
        p2,
        a_hat: Rat::zero(),
        spin_applicable: case.r % 2 == 0,
    };
    pd.a_hat = a_hat_genus(&pd);
    pd
}

/// `Â = ⟨7p1² − 4p2⟩ / 5760`.
pub fn a_hat_genus(pd: &PontryaginData) -> Rat {
    (rat_int(7) * &pd.p1_sq - rat_int(4) * &pd.p2) / rat_int(5760)
}

/// `σ = ⟨7p2 − p1²⟩ / 45`.
pub fn l_genus_signature(pd: &PontryaginData) -> Rat {
    (rat_int(7) * &pd.p2 - &pd.p1_sq) / rat_int(45)
}
