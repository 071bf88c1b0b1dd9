//! Closed-form evaluation of every Gaussian bound.
//!
//! Bound naming (ids used across the crate, the CLI, and CSV output):
//!
//! - `inner2` / `outer2` — the |a| > 1 inner and outer bounds (receiver 1
//!   decodes everything intended for receiver 2).
//! - `inner1a` — |a| ≤ 1 inner bound with the first layer precoded against
//!   the state seen at receiver 1; `outer1a` the matching outer bound, which
//!   is also the capacity region when the state is known at receiver 2 too.
//! - `inner1b` / `outer1b` — |a| ≤ 1 bounds with both layers precoded
//!   against the state seen at receiver 2.
//! - `cap7`, `cap10`, `cap12` — full-capacity formulas under the asserted
//!   less-noisy conditions; `cap14`, `cap15` — both-side-state capacities.
//!
//! Every value is the right-hand side of the cited bound, in bits. Values may
//! be negative for badly mismatched parameters; region construction clamps
//! them at zero and flags such points infeasible for certification.

use super::{classify_case, CaseTag, GaussError, GaussianChannelParams, SplitMode, SplitParams};
use crate::{half_log2_1p, Real};
use serde::{Deserialize, Serialize};

/// Dirty-paper scalings and composite state coefficients for one bound.
///
/// `rho2s1` is the auxiliary layer's coefficient on the unit-variance state
/// (times the gain convention of the printed forms) and `rho2s2` the
/// channel's; both carry the √Q scaling so that Q = 0 needs no division.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DpcAux<F> {
    pub alpha: F,
    pub beta: F,
    pub rho2s1: F,
    pub rho2s2: F,
}

/// Identifies which closed-form family a sweep or CSV row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundId {
    Inner2,
    Outer2,
    Inner1a,
    Inner1b,
    Outer1a,
    Outer1b,
    /// Capacity, |a| > 1 under condition (8): the `outer2` region at equality.
    Cap7,
    /// Capacity, |a| ≤ 1 under condition (7): first two `outer1a` bounds.
    Cap10,
    /// Capacity, |a| ≤ 1 under condition (8).
    Cap12,
    /// Capacity with state at both transmitter 2 and receiver 2, |a| ≤ 1.
    Cap14,
    /// Capacity with state at both transmitter 2 and receiver 2, |a| > 1.
    Cap15,
}

impl BoundId {
    pub fn name(&self) -> &'static str {
        match self {
            BoundId::Inner2 => "inner2",
            BoundId::Outer2 => "outer2",
            BoundId::Inner1a => "inner1a",
            BoundId::Inner1b => "inner1b",
            BoundId::Outer1a => "outer1a",
            BoundId::Outer1b => "outer1b",
            BoundId::Cap7 => "cap7",
            BoundId::Cap10 => "cap10",
            BoundId::Cap12 => "cap12",
            BoundId::Cap14 => "cap14",
            BoundId::Cap15 => "cap15",
        }
    }

    pub fn parse(s: &str) -> Option<BoundId> {
        match s {
            "inner2" => Some(BoundId::Inner2),
            "outer2" => Some(BoundId::Outer2),
            "inner1a" => Some(BoundId::Inner1a),
            "inner1b" => Some(BoundId::Inner1b),
            "outer1a" => Some(BoundId::Outer1a),
            "outer1b" => Some(BoundId::Outer1b),
            "cap7" | "thm7" => Some(BoundId::Cap7),
            "cap10" | "thm10" => Some(BoundId::Cap10),
            "cap12" | "thm12" => Some(BoundId::Cap12),
            "cap14" | "thm14" => Some(BoundId::Cap14),
            "cap15" | "thm15" => Some(BoundId::Cap15),
            _ => None,
        }
    }
}

/// `½ log₂(1 + (b²P1 + 2bρ21√(P1P2) + ρ21²P2) / ((1−ρ21²)P2 + 2cρ2s√(P2Q) + c²Q + 1))`
///
/// The receiver-2 "decode X1 against the residual" term shared by the outer
/// bounds and every sum rate at Z.
pub fn z_side_term<F: Real>(p: &GaussianChannelParams<F>, rho21: F, rho2s: F) -> F {
    let two = F::of(2.0);
    let num = p.b * p.b * p.p1
        + two * p.b * rho21 * (p.p1 * p.p2).sqrt()
        + rho21 * rho21 * p.p2;
    let den = (F::one() - rho21 * rho21) * p.p2
        + two * p.c * rho2s * (p.p2 * p.q).sqrt()
        + p.c * p.c * p.q
        + F::one();
    half_log2_1p(num / den)
}

/// The receiver-1 analogue of [`z_side_term`].
pub fn y_side_term<F: Real>(p: &GaussianChannelParams<F>, rho21: F, rho2s: F) -> F {
    let two = F::of(2.0);
    let num = p.p1
        + two * p.a * rho21 * (p.p1 * p.p2).sqrt()
        + p.a * p.a * rho21 * rho21 * p.p2;
    let den = p.a * p.a * (F::one() - rho21 * rho21) * p.p2
        + two * p.a * rho2s * (p.p2 * p.q).sqrt()
        + p.q
        + F::one();
    half_log2_1p(num / den)
}

/// Rate of a Gel'fand–Pinsker layer with a possibly mismatched scaling.
///
/// Channel seen by the layer (given X1): `W = g·X2' + g·X2'' + m·S̃ + N` with
/// unit-variance `S̃` and `N`; auxiliary `A = X2' + t·S̃`. Returns
/// `I(A;W) − I(A;S̃) = ½log₂(1 + N/D)` with
///
/// ```text
/// N = g²P2'² + 2gtm·P2' − g²t²(P2' + P2'') − t²
/// D = g²P2'P2'' + (m² + 1)P2' + g²t²(P2' + P2'') + t² − 2gtm·P2'
/// ```
///
/// At the Costa-optimal `t* = gP2'm / (g²(P2'+P2'') + 1)` this equals
/// `½log₂(1 + g²P2'/(g²P2'' + 1))`.
pub fn gp_layer_term<F: Real>(g: F, m: F, t: F, p2p: F, p2pp: F) -> F {
    if p2p <= F::zero() {
        return F::zero();
    }
    let two = F::of(2.0);
    let n = g * g * p2p * p2p + two * g * t * m * p2p
        - g * g * t * t * (p2p + p2pp)
        - t * t;
    let d = g * g * p2p * p2pp
        + (m * m + F::one()) * p2p
        + g * g * t * t * (p2p + p2pp)
        + t * t
        - two * g * t * m * p2p;
    half_log2_1p(n / d)
}

fn check_case<F: Real>(
    p: &GaussianChannelParams<F>,
    want: CaseTag,
    strict: bool,
) -> Result<(), GaussError> {
    if strict && classify_case(p) != want {
        return Err(GaussError::CaseMismatch(format!(
            "bound requires {:?} but a = {:?}",
            want, p.a
        )));
    }
    Ok(())
}

/// State coefficients in √Q units: `(√Q + aρ2s√P2, c√Q + ρ2s√P2)`.
fn state_coefs<F: Real>(p: &GaussianChannelParams<F>, rho2s: F) -> (F, F) {
    let sq = p.q.sqrt();
    let sp2 = p.p2.sqrt();
    (sq + p.a * rho2s * sp2, p.c * sq + rho2s * sp2)
}

// ---------------------------------------------------------------------------
// |a| > 1
// ---------------------------------------------------------------------------

/// Inner bound for |a| > 1; receiver 1 decodes all of transmitter 2's data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inner2<F> {
    /// Bound on R2.
    pub r2: F,
    /// Bound on R1 + R2 from decoding at receiver 2.
    pub r12_z: F,
    /// Bound on R1 + R2 from decoding at receiver 1.
    pub r12_y: F,
}

/// The dirty-paper scalings of the |a| > 1 inner bound.
pub fn inner2_aux<F: Real>(p: &GaussianChannelParams<F>, sp: &SplitParams<F>) -> DpcAux<F> {
    let p2p = sp.residual_power(p.p2).max(F::zero());
    let alpha = p2p / (p2p + F::one());
    let (my, mz) = state_coefs(p, sp.rho2s);
    DpcAux { alpha, beta: F::zero(), rho2s1: alpha * mz, rho2s2: my }
}

/// Inner bound for |a| > 1 (single auxiliary layer precoded against the state
/// at receiver 2). Equality mode with `p2_dprime = 0`; the sum-rate bounds use
/// the substituted residual power.
pub fn inner2_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Inner2<F>, GaussError> {
    check_case(p, CaseTag::AboveOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    if sp.p2_dprime > F::of(1e-9) {
        return Err(GaussError::InvalidSplit("inner2 requires p2_dprime = 0".into()));
    }
    let p2p = sp.residual_power(p.p2).max(F::zero());
    let aux = inner2_aux(p, sp);
    Ok(Inner2 {
        r2: half_log2_1p(p2p),
        r12_z: z_side_term(p, sp.rho21, sp.rho2s) + half_log2_1p(p2p),
        r12_y: y_side_term(p, sp.rho21, sp.rho2s)
            + gp_layer_term(p.a, aux.rho2s2, aux.rho2s1, p2p, F::zero()),
    })
}

/// Outer bound for |a| > 1 (the capacity region of the multiple access
/// channel with state seen by receiver 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outer2<F> {
    pub r2: F,
    pub r12: F,
}

/// Outer bound for |a| > 1. Inequality mode: `p2_prime` is the free share
/// bounding R2; the sum rate uses the full residual power.
pub fn outer2_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
) -> Result<Outer2<F>, GaussError> {
    sp.validate(p.p2, SplitMode::Inequality)?;
    let cap = sp.residual_power(p.p2).max(F::zero());
    Ok(Outer2 {
        r2: half_log2_1p(sp.p2_prime),
        r12: z_side_term(p, sp.rho21, sp.rho2s) + half_log2_1p(cap),
    })
}

// ---------------------------------------------------------------------------
// |a| <= 1
// ---------------------------------------------------------------------------

/// Inner bound 1 for |a| ≤ 1: layer T precoded against the state at
/// receiver 1, layer V against the state at receiver 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inner1a<F> {
    pub r1: F,
    /// First bound on R2 (private-layer rate).
    pub r2a: F,
    /// Second bound on R2 (both layers at receiver 2).
    pub r2b: F,
    pub r12: F,
}

/// Dirty-paper scalings for inner bound 1.
///
/// `alpha = a²P2'/(a²P2' + a²P2'' + 1)`; the layer coefficient on the
/// unit-variance state is `rho2s1 / a` (the α here matches the closed-form
/// fractions, which carry the extra gain factor).
pub fn inner1a_aux<F: Real>(p: &GaussianChannelParams<F>, sp: &SplitParams<F>) -> DpcAux<F> {
    let a2 = p.a * p.a;
    let alpha = a2 * sp.p2_prime / (a2 * (sp.p2_prime + sp.p2_dprime) + F::one());
    let beta = sp.p2_dprime / (sp.p2_dprime + F::one());
    let (my, mz) = state_coefs(p, sp.rho2s);
    DpcAux { alpha, beta, rho2s1: alpha * my, rho2s2: mz }
}

pub fn inner1a_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Inner1a<F>, GaussError> {
    check_case(p, CaseTag::AtMostOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    let (p2p, p2pp) = (sp.p2_prime, sp.p2_dprime);
    let a2 = p.a * p.a;
    let aux = inner1a_aux(p, sp);
    // T's coefficient on the unit-variance state; the z-side channel has unit
    // gain, so the shared fraction is evaluated at (g=1, m=ρ2s2, t=ρ2s1/a).
    let tau = if p.a == F::zero() { F::zero() } else { aux.rho2s1 / p.a };
    let both_layers = gp_layer_term(F::one(), aux.rho2s2, tau, p2p, p2pp);
    Ok(Inner1a {
        r1: y_side_term(p, sp.rho21, sp.rho2s)
            + half_log2_1p(a2 * p2p / (a2 * p2pp + F::one())),
        r2a: half_log2_1p(p2pp),
        r2b: both_layers + half_log2_1p(p2pp),
        r12: z_side_term(p, sp.rho21, sp.rho2s) + both_layers + half_log2_1p(p2pp),
    })
}

/// Inner bound 2 for |a| ≤ 1: both layers precoded against the state at
/// receiver 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inner1b<F> {
    pub r1: F,
    pub r2: F,
    pub r12: F,
}

/// Dirty-paper scalings for inner bound 2: `alpha = P2'/(P2' + P2'' + 1)`.
pub fn inner1b_aux<F: Real>(p: &GaussianChannelParams<F>, sp: &SplitParams<F>) -> DpcAux<F> {
    let alpha = sp.p2_prime / (sp.p2_prime + sp.p2_dprime + F::one());
    let beta = sp.p2_dprime / (sp.p2_dprime + F::one());
    let (my, mz) = state_coefs(p, sp.rho2s);
    DpcAux { alpha, beta, rho2s1: alpha * mz, rho2s2: my }
}

pub fn inner1b_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Inner1b<F>, GaussError> {
    check_case(p, CaseTag::AtMostOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    let (p2p, p2pp) = (sp.p2_prime, sp.p2_dprime);
    let aux = inner1b_aux(p, sp);
    // T is matched to Z, so at receiver 1 (gain a, state coefficient ρ2s2)
    // its coefficient ρ2s1 is mismatched.
    Ok(Inner1b {
        r1: y_side_term(p, sp.rho21, sp.rho2s)
            + gp_layer_term(p.a, aux.rho2s2, aux.rho2s1, p2p, p2pp),
        r2: half_log2_1p(p2pp),
        r12: z_side_term(p, sp.rho21, sp.rho2s)
            + half_log2_1p(sp.residual_power(p.p2).max(F::zero())),
    })
}

/// Outer bound 1 for |a| ≤ 1: the capacity region of the same channel with
/// the state also known at receiver 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outer1a<F> {
    pub r1: F,
    pub r2: F,
    pub r12: F,
}

pub fn outer1a_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Outer1a<F>, GaussError> {
    check_case(p, CaseTag::AtMostOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    let (p2p, p2pp) = (sp.p2_prime, sp.p2_dprime);
    let a2 = p.a * p.a;
    let two = F::of(2.0);
    Ok(Outer1a {
        r1: y_side_term(p, sp.rho21, sp.rho2s)
            + half_log2_1p(a2 * p2p / (a2 * p2pp + F::one())),
        r2: half_log2_1p(p2pp),
        r12: half_log2_1p(
            p.b * p.b * p.p1
                + two * p.b * sp.rho21 * (p.p1 * p.p2).sqrt()
                + (F::one() - sp.rho2s * sp.rho2s) * p.p2,
        ),
    })
}

/// Outer bound 2 for |a| ≤ 1 (same algebraic shape as [`outer2_rates`];
/// the free share bounds R2 as P2″).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outer1b<F> {
    pub r2: F,
    pub r12: F,
}

pub fn outer1b_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
) -> Result<Outer1b<F>, GaussError> {
    sp.validate(p.p2, SplitMode::Inequality)?;
    let cap = sp.residual_power(p.p2).max(F::zero());
    Ok(Outer1b {
        r2: half_log2_1p(sp.p2_prime),
        r12: z_side_term(p, sp.rho21, sp.rho2s) + half_log2_1p(cap),
    })
}

// ---------------------------------------------------------------------------
// Capacity formulas
// ---------------------------------------------------------------------------

/// Capacity region bounds with state at both transmitter 2 and receiver 2,
/// |a| > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapBoth2<F> {
    pub r2: F,
    /// Sum-rate bound at receiver 2 given the state.
    pub r12a: F,
    /// Sum-rate bound through receiver 1's decoding.
    pub r12b: F,
}

pub fn cap_both_rx_case2<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<CapBoth2<F>, GaussError> {
    check_case(p, CaseTag::AboveOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    if sp.p2_dprime > F::of(1e-9) {
        return Err(GaussError::InvalidSplit("cap15 requires p2_dprime = 0".into()));
    }
    let cap = sp.residual_power(p.p2).max(F::zero());
    let two = F::of(2.0);
    let a2 = p.a * p.a;
    Ok(CapBoth2 {
        r2: half_log2_1p(cap),
        r12a: half_log2_1p(
            p.b * p.b * p.p1
                + two * p.b * sp.rho21 * (p.p1 * p.p2).sqrt()
                + (F::one() - sp.rho2s * sp.rho2s) * p.p2,
        ),
        r12b: y_side_term(p, sp.rho21, sp.rho2s) + half_log2_1p(a2 * cap),
    })
}

/// Capacity under condition (8), |a| > 1: the outer2 region at equality.
pub fn cap7_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Outer2<F>, GaussError> {
    check_case(p, CaseTag::AboveOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    let cap = sp.residual_power(p.p2).max(F::zero());
    Ok(Outer2 {
        r2: half_log2_1p(cap),
        r12: z_side_term(p, sp.rho21, sp.rho2s) + half_log2_1p(cap),
    })
}

/// Capacity under condition (7), |a| ≤ 1: the first two outer1a bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cap10<F> {
    pub r1: F,
    pub r2: F,
}

pub fn cap10_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Cap10<F>, GaussError> {
    let o = outer1a_rates(p, sp, strict)?;
    Ok(Cap10 { r1: o.r1, r2: o.r2 })
}

/// Capacity under condition (8), |a| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cap12<F> {
    pub r1: F,
    pub r2: F,
}

pub fn cap12_rates<F: Real>(
    p: &GaussianChannelParams<F>,
    sp: &SplitParams<F>,
    strict: bool,
) -> Result<Cap12<F>, GaussError> {
    check_case(p, CaseTag::AtMostOne, strict)?;
    sp.validate(p.p2, SplitMode::Equality)?;
    Ok(Cap12 {
        r1: half_log2_1p(sp.p2_prime / (sp.p2_dprime + F::one()))
            + z_side_term(p, sp.rho21, sp.rho2s),
        r2: half_log2_1p(sp.p2_dprime),
    })
}

// ---------------------------------------------------------------------------
// Region caps: the (R1, R2) constraint set induced by one bound evaluation
// ---------------------------------------------------------------------------

/// The polygon `{R1 ≤ r1_cap, R2 ≤ r2_cap, R1 + R2 ≤ sum_cap} ∩ R²≥0`
/// induced by a bound evaluation at one split. Missing caps are `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCaps {
    pub r1_cap: f64,
    pub r2_cap: f64,
    pub sum_cap: f64,
    /// True when some raw bound evaluated below zero (clamped here), which
    /// disqualifies the point for certification predicates.
    pub clamped: bool,
}

impl RegionCaps {
    fn build(r1: Option<f64>, r2s: &[f64], sums: &[f64]) -> RegionCaps {
        let mut clamped = false;
        let mut clamp = |v: f64| {
            if v < 0.0 {
                clamped = true;
                0.0
            } else {
                v
            }
        };
        let r1_cap = r1.map(&mut clamp).unwrap_or(f64::INFINITY);
        let r2_cap = r2s.iter().cloned().map(&mut clamp).fold(f64::INFINITY, f64::min);
        let sum_cap = sums.iter().cloned().map(&mut clamp).fold(f64::INFINITY, f64::min);
        RegionCaps { r1_cap, r2_cap, sum_cap, clamped }
    }

    /// Max R1 at a fixed R2 level, or `None` if the level is infeasible.
    pub fn max_r1_at(&self, r2: f64) -> Option<f64> {
        if r2 > self.r2_cap + 1e-15 || r2 > self.sum_cap + 1e-15 {
            return None;
        }
        Some(self.r1_cap.min(self.sum_cap - r2).max(0.0))
    }
}

/// Evaluate the region caps of `bound` at one split point (non-strict case
/// handling: sweeps may explore a bound outside its home case).
pub fn region_caps(
    p: &GaussianChannelParams<f64>,
    bound: BoundId,
    sp: &SplitParams<f64>,
) -> Result<RegionCaps, GaussError> {
    Ok(match bound {
        BoundId::Inner2 => {
            let v = inner2_rates(p, sp, false)?;
            RegionCaps::build(None, &[v.r2], &[v.r12_z, v.r12_y])
        }
        BoundId::Outer2 => {
            let v = outer2_rates(p, sp)?;
            RegionCaps::build(None, &[v.r2], &[v.r12])
        }
        BoundId::Inner1a => {
            let v = inner1a_rates(p, sp, false)?;
            RegionCaps::build(Some(v.r1), &[v.r2a, v.r2b], &[v.r12])
        }
        BoundId::Inner1b => {
            let v = inner1b_rates(p, sp, false)?;
            RegionCaps::build(Some(v.r1), &[v.r2], &[v.r12])
        }
        BoundId::Outer1a | BoundId::Cap14 => {
            let v = outer1a_rates(p, sp, false)?;
            RegionCaps::build(Some(v.r1), &[v.r2], &[v.r12])
        }
        BoundId::Outer1b => {
            let v = outer1b_rates(p, sp)?;
            RegionCaps::build(None, &[v.r2], &[v.r12])
        }
        BoundId::Cap7 => {
            let v = cap7_rates(p, sp, false)?;
            RegionCaps::build(None, &[v.r2], &[v.r12])
        }
        BoundId::Cap10 => {
            let v = cap10_rates(p, sp, false)?;
            RegionCaps::build(Some(v.r1), &[v.r2], &[])
        }
        BoundId::Cap12 => {
            let v = cap12_rates(p, sp, false)?;
            RegionCaps::build(Some(v.r1), &[v.r2], &[])
        }
        BoundId::Cap15 => {
            let v = cap_both_rx_case2(p, sp, false)?;
            RegionCaps::build(None, &[v.r2], &[v.r12a, v.r12b])
        }
    })
}

/// Whether a bound sweeps the power split as a third grid dimension.
pub fn bound_uses_split(bound: BoundId) -> bool {
    matches!(
        bound,
        BoundId::Inner1a
            | BoundId::Inner1b
            | BoundId::Outer1a
            | BoundId::Cap10
            | BoundId::Cap12
            | BoundId::Cap14
    )
}

/// The bound's home interference case, if it has one.
pub fn bound_case(bound: BoundId) -> Option<CaseTag> {
    match bound {
        BoundId::Inner2 | BoundId::Cap7 | BoundId::Cap15 => Some(CaseTag::AboveOne),
        BoundId::Inner1a | BoundId::Inner1b | BoundId::Outer1a | BoundId::Cap10
        | BoundId::Cap12 | BoundId::Cap14 => Some(CaseTag::AtMostOne),
        BoundId::Outer2 | BoundId::Outer1b => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> GaussianChannelParams<f64> {
        GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap()
    }

    fn fig3() -> GaussianChannelParams<f64> {
        GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 0.8, 0.85, 0.9).unwrap()
    }

    #[test]
    fn inner2_fig2_center() {
        // Frozen via the log-det oracle at rho = 0, P2' = 1.
        let p = fig2();
        let sp = SplitParams::full_prime(0.0, 0.0, p.p2);
        let v = inner2_rates(&p, &sp, true).unwrap();
        assert!((v.r2 - 0.5).abs() < 1e-12);
        assert!((v.r12_z - 0.967175978882243).abs() < 1e-12);
        assert!((v.r12_y - 1.002408508148888).abs() < 1e-12);
    }

    #[test]
    fn inner2_no_state_reduction() {
        // q = 0, rho = 0, P2' = P2: r12_y collapses to the no-state MAC sum
        // capacity at receiver 1.
        let p = GaussianChannelParams::<f64>::new(1.0, 1.0, 0.0, 1.5, 1.6, 0.0).unwrap();
        let sp = SplitParams::full_prime(0.0, 0.0, p.p2);
        let v = inner2_rates(&p, &sp, true).unwrap();
        let expect = 0.5 * (1.0 + p.p1 + p.a * p.a * p.p2).log2();
        assert!((v.r12_y - expect).abs() < 1e-12, "got {} want {}", v.r12_y, expect);
        assert!((expect - 1.043731420625170).abs() < 1e-12);
    }

    #[test]
    fn inner2_zero_power() {
        let p = GaussianChannelParams::<f64>::new(1.0, 0.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let sp = SplitParams::full_prime(0.0, 0.0, p.p2);
        let v = inner2_rates(&p, &sp, true).unwrap();
        assert_eq!(v.r2, 0.0);
    }

    #[test]
    fn inner2_strict_case() {
        let p = fig3();
        let sp = SplitParams::full_prime(0.0, 0.0, p.p2);
        assert!(matches!(inner2_rates(&p, &sp, true), Err(GaussError::CaseMismatch(_))));
        assert!(inner2_rates(&p, &sp, false).is_ok());
    }

    #[test]
    fn outer2_fig2_center() {
        let p = fig2();
        let sp = SplitParams::inequality(0.0, 0.0, 1.0);
        let v = outer2_rates(&p, &sp).unwrap();
        assert!((v.r2 - 0.5).abs() < 1e-12);
        assert!((v.r12 - 0.967175978882243).abs() < 1e-12);
    }

    #[test]
    fn outer2_single_user_reduction() {
        // P2 = 0: receiver 2 sees only b·X1 against c·S + N2.
        let p = GaussianChannelParams::<f64>::new(2.0, 0.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let sp = SplitParams::inequality(0.0, 0.0, 0.0);
        let v = outer2_rates(&p, &sp).unwrap();
        assert_eq!(v.r2, 0.0);
        let expect = 0.5 * (1.0 + p.b * p.b * p.p1 / (p.c * p.c * p.q + 1.0)).log2();
        assert!((v.r12 - expect).abs() < 1e-12);
    }

    #[test]
    fn outer2_no_direct_link() {
        // b = 0 kills the z-side term; the sum bound reduces to the R2 term
        // alone (oracle-checked; see the oracle crosscheck suite).
        let p = GaussianChannelParams::<f64>::new(3.0, 1.0, 1.0, 1.5, 0.0, 0.9).unwrap();
        let sp = SplitParams::inequality(0.0, 0.0, 1.0);
        let v = outer2_rates(&p, &sp).unwrap();
        assert!((v.r12 - 0.5 * (1.0 + p.p2).log2()).abs() < 1e-12);
    }

    #[test]
    fn inner1a_private_layer_only() {
        let p = fig3();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.0, p.p2); // P2' = 0, P2'' = P2
        let v = inner1a_rates(&p, &sp, true).unwrap();
        assert!((v.r2a - 0.5 * (1.0 + p.p2).log2()).abs() < 1e-12);
    }

    #[test]
    fn inner1a_fig3_center() {
        // Frozen via the log-det oracle at rho = 0, P2' = P2'' = 0.5.
        let p = fig3();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.5, p.p2);
        let v = inner1a_rates(&p, &sp, true).unwrap();
        assert!((v.r1 - 0.388279203049111).abs() < 1e-11, "r1 = {}", v.r1);
        assert!((v.r2a - 0.292481250359271).abs() < 1e-11);
        assert!((v.r2b - 0.499510981344811).abs() < 1e-11);
        assert!((v.r12 - 0.664570696401080).abs() < 1e-11);
    }

    #[test]
    fn inner1a_no_state_reduction() {
        let p = GaussianChannelParams::<f64>::new(1.0, 1.0, 0.0, 0.8, 0.85, 0.0).unwrap();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.5, p.p2);
        let v = inner1a_rates(&p, &sp, true).unwrap();
        let a2 = p.a * p.a;
        let expect = 0.5 * (1.0 + p.p1 / (a2 * p.p2 + 1.0)).log2()
            + 0.5 * (1.0 + a2 * sp.p2_prime / (a2 * sp.p2_dprime + 1.0)).log2();
        assert!((v.r1 - expect).abs() < 1e-12);
    }

    #[test]
    fn inner1b_fig3_center() {
        let p = fig3();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.5, p.p2);
        let v = inner1b_rates(&p, &sp, true).unwrap();
        assert!((v.r1 - 0.387881462076790).abs() < 1e-11);
        assert!((v.r2 - 0.292481250359275).abs() < 1e-11);
        assert!((v.r12 - 0.665059715054351).abs() < 1e-11);
    }

    #[test]
    fn inner1b_trivial_cases() {
        let p = fig3();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.0, p.p2);
        let v = inner1b_rates(&p, &sp, true).unwrap();
        assert!((v.r2 - 0.5 * (1.0 + p.p2).log2()).abs() < 1e-12);

        let p0 = GaussianChannelParams::<f64>::new(1.0, 0.0, 1.0, 0.8, 0.85, 0.9).unwrap();
        let sp0 = SplitParams::with_fraction(0.0, 0.0, 0.5, p0.p2);
        let v0 = inner1b_rates(&p0, &sp0, true).unwrap();
        assert_eq!(v0.r2, 0.0);
        let single = 0.5 * (1.0 + p0.b * p0.b * p0.p1 / (p0.c * p0.c * p0.q + 1.0)).log2();
        assert!((v0.r12 - single).abs() < 1e-12);
    }

    #[test]
    fn outer1a_values() {
        let p = fig3();
        let sp = SplitParams::with_fraction(0.0, 0.0, 0.0, p.p2);
        let v = outer1a_rates(&p, &sp, true).unwrap();
        assert!((v.r2 - 0.5 * (1.0 + p.p2).log2()).abs() < 1e-12);
        // r12 = half_log2(1 + b^2 P1 + (1 - rho2s^2) P2) at rho = 0; the
        // spec formula evaluates to 0.722466 bits on this channel.
        assert!((v.r12 - 0.722466024471091).abs() < 1e-12, "r12 = {}", v.r12);

        // a = 0 edge: interference-free receiver 1.
        let p0 = GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 0.0, 0.85, 0.9).unwrap();
        let v0 = outer1a_rates(&p0, &SplitParams::with_fraction(0.0, 0.0, 0.5, p0.p2), true)
            .unwrap();
        let first = 0.5 * (1.0 + p0.p1 / (p0.q + 1.0)).log2();
        assert!((v0.r1 - first).abs() < 1e-12);
    }

    #[test]
    fn outer1b_degenerate_rho() {
        // rho2s = 1 leaves no residual power: the R2 share is forced to 0.
        let p = fig3();
        let sp = SplitParams::inequality(0.0, 1.0, 0.0);
        let v = outer1b_rates(&p, &sp).unwrap();
        assert_eq!(v.r2, 0.0);
        let too_big = SplitParams::inequality(0.0, 1.0, 0.25);
        assert!(outer1b_rates(&p, &too_big).is_err());
    }

    #[test]
    fn cap15_cases() {
        let p = fig2();
        let sp = SplitParams::full_prime(0.0, 0.0, p.p2);
        let v = cap_both_rx_case2(&p, &sp, true).unwrap();
        assert!((v.r2 - 0.5).abs() < 1e-12);

        // P2 = 0 reduction.
        let p0 = GaussianChannelParams::<f64>::new(1.0, 0.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let v0 =
            cap_both_rx_case2(&p0, &SplitParams::full_prime(0.0, 0.0, 0.0), true).unwrap();
        assert_eq!(v0.r2, 0.0);

        // rho on the unit circle: no residual power, R2 = 0.
        let v1 = cap_both_rx_case2(&p, &SplitParams::full_prime(1.0, 0.0, p.p2), true).unwrap();
        assert!(v1.r2.abs() < 1e-9);
    }

    #[test]
    fn region_caps_clamping() {
        let caps = RegionCaps::build(Some(-0.25), &[0.5], &[0.7]);
        assert!(caps.clamped);
        assert_eq!(caps.r1_cap, 0.0);
        assert_eq!(caps.max_r1_at(0.2), Some(0.0));
        assert_eq!(caps.max_r1_at(0.6), None);
    }
}
