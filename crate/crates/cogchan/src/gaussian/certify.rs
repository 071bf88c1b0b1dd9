//! Capacity-boundary certification and full-capacity frontiers.
//!
//! The inner and outer bounds never match everywhere, but matched segments
//! certify capacity boundary points:
//!
//! - |a| > 1: for each P2′, maximize the outer sum rate over the correlation
//!   disk; the point is on the capacity boundary when the competing inner
//!   sum-rate bound at the maximizer is not the binding one.
//! - |a| ≤ 1, variant `a`: for each P2″, maximize the inner R1 bound; the
//!   point is certified when the remaining inner bounds do not cut it.
//! - |a| ≤ 1, variant `b`: for each P2″, maximize the sum rate of outer
//!   bound 2; certified when the inner R1 bound covers the residual rate.
//!
//! Ties in the disk argmax break toward the smallest (|ρ21|, |ρ2s|)
//! lexicographically, so certification is deterministic.

use super::{
    classify_case, inner1a_rates, inner1b_rates, inner2_rates, z_side_term, BoundId, CaseTag,
    GaussError, GaussianChannelParams, GridSpec, RateFrontier, RatePair, SplitParams,
};
use crate::gaussian::{frontier, half_log2_1p_f64};
use serde::{Deserialize, Serialize};

/// Which theorem certified a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertTheorem {
    Thm6,
    Thm8,
    Thm9,
}

impl CertTheorem {
    pub fn name(&self) -> &'static str {
        match self {
            CertTheorem::Thm6 => "thm6",
            CertTheorem::Thm8 => "thm8",
            CertTheorem::Thm9 => "thm9",
        }
    }
}

/// A certified capacity-boundary point with the split that achieves it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CertifiedPoint {
    pub rate: RatePair,
    pub split: SplitParams<f64>,
    pub theorem: CertTheorem,
}

/// Caller-asserted less-noisy condition for the capacity formulas. The
/// toolkit cannot verify these for Gaussian parameters; they are inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AssertedCondition {
    /// Condition (7): receiver 2 is less noisy than receiver 1.
    Cond7,
    /// Condition (8): receiver 1 is less noisy than receiver 2.
    Cond8,
}

const PRED_TOL: f64 = 1e-12;

fn linspace(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Deterministic argmax over the (ρ21, ρ2s) disk subject to a residual-power
/// floor, with coordinate refinement. `f` returns the objective (None for
/// infeasible points). Ties break toward the smallest (|ρ21|, |ρ2s|).
fn disk_argmax<F>(grid: &GridSpec, p2: f64, min_residual: f64, f: F) -> Option<(f64, f64, f64)>
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let rhos = linspace(grid.rho_steps, -1.0, 1.0);
    let feasible = |r21: f64, r2s: f64| {
        r21 * r21 + r2s * r2s <= 1.0
            && (1.0 - r21 * r21 - r2s * r2s) * p2 >= min_residual - 1e-12
    };
    let mut best: Option<(f64, f64, f64)> = None;
    for &r21 in &rhos {
        for &r2s in &rhos {
            if !feasible(r21, r2s) {
                continue;
            }
            if let Some(v) = f(r21, r2s) {
                let better = match best {
                    None => true,
                    Some((bv, b21, b2s)) => {
                        v > bv + 1e-15
                            || ((v - bv).abs() <= 1e-15
                                && (r21.abs(), r2s.abs()) < (b21.abs(), b2s.abs()))
                    }
                };
                if better {
                    best = Some((v, r21, r2s));
                }
            }
        }
    }
    let (mut bv, mut b21, mut b2s) = best?;
    let mut step = 2.0 / (grid.rho_steps.max(2) - 1) as f64;
    for _ in 0..grid.refine_rounds {
        for k in 0..2 {
            for dir in [-1.0, 1.0] {
                let (c21, c2s) = if k == 0 {
                    ((b21 + dir * step).clamp(-1.0, 1.0), b2s)
                } else {
                    (b21, (b2s + dir * step).clamp(-1.0, 1.0))
                };
                if !feasible(c21, c2s) {
                    continue;
                }
                if let Some(v) = f(c21, c2s) {
                    if v > bv + 1e-15 {
                        bv = v;
                        b21 = c21;
                        b2s = c2s;
                    }
                }
            }
        }
        step *= grid.shrink;
    }
    Some((bv, b21, b2s))
}

/// Boundary certification for |a| > 1: sweeps P2′ and applies the matched
/// inner/outer sum-rate predicate; also emits the max-R2 corner point.
pub fn certify_case2(
    params: &GaussianChannelParams<f64>,
    grid: &GridSpec,
) -> Result<Vec<CertifiedPoint>, GaussError> {
    if classify_case(params) != CaseTag::AboveOne {
        return Err(GaussError::CaseMismatch("certification needs |a| > 1".into()));
    }
    let mut out = Vec::new();
    for p2p in linspace(grid.split_steps, 0.0, params.p2) {
        let r2 = half_log2_1p_f64(p2p);
        let r12_of = |r21: f64, r2s: f64| -> Option<f64> {
            let sp = SplitParams::full_prime(r21, r2s, params.p2);
            let v = inner2_rates(params, &sp, false).ok()?;
            Some(v.r12_z)
        };
        let Some((r12, b21, b2s)) = disk_argmax(grid, params.p2, p2p, r12_of) else {
            continue;
        };
        let sp = SplitParams::full_prime(b21, b2s, params.p2);
        let v = inner2_rates(params, &sp, false)?;
        if v.r12_z <= v.r12_y + PRED_TOL && r12 - r2 >= -PRED_TOL {
            out.push(CertifiedPoint {
                rate: RatePair::new(r12 - r2, r2),
                split: SplitParams { p2_prime: p2p, p2_dprime: 0.0, ..sp },
                theorem: CertTheorem::Thm6,
            });
        }
    }
    // Max-R2 statement: at P2' = P2 the disk pins rho = 0 and any R1 up to
    // the inner bound shares the boundary. Emit the corner.
    if let Some(r1) = thm6_max_r2_limit(params) {
        let r2 = half_log2_1p_f64(params.p2);
        if r1 >= 0.0 {
            out.push(CertifiedPoint {
                rate: RatePair::new(r1, r2),
                split: SplitParams { rho21: 0.0, rho2s: 0.0, p2_prime: params.p2, p2_dprime: 0.0 },
                theorem: CertTheorem::Thm6,
            });
        }
    }
    dedupe(&mut out);
    Ok(out)
}

/// The R1 extent of the certified max-R2 segment for |a| > 1: rate pairs
/// `(R1, ½log₂(1+P2))` are on the boundary for any `R1` up to this value.
pub fn thm6_max_r2_limit(params: &GaussianChannelParams<f64>) -> Option<f64> {
    let sp = SplitParams::full_prime(0.0, 0.0, params.p2);
    let v = inner2_rates(params, &sp, false).ok()?;
    Some(v.r12_z.min(v.r12_y) - half_log2_1p_f64(params.p2))
}

/// Boundary certification for |a| ≤ 1 from inner bound 1 against outer
/// bound 1 (the both-side-state capacity region).
pub fn certify_case1a(
    params: &GaussianChannelParams<f64>,
    grid: &GridSpec,
) -> Result<Vec<CertifiedPoint>, GaussError> {
    if classify_case(params) != CaseTag::AtMostOne {
        return Err(GaussError::CaseMismatch("certification needs |a| <= 1".into()));
    }
    let mut out = Vec::new();
    for p2pp in linspace(grid.split_steps, 0.0, params.p2) {
        let r1_of = |r21: f64, r2s: f64| -> Option<f64> {
            let sp = split_with_dprime(params, r21, r2s, p2pp)?;
            let v = inner1a_rates(params, &sp, false).ok()?;
            Some(v.r1)
        };
        let Some((r1, b21, b2s)) = disk_argmax(grid, params.p2, p2pp, r1_of) else {
            continue;
        };
        let sp = split_with_dprime(params, b21, b2s, p2pp).expect("argmax point feasible");
        let v = inner1a_rates(params, &sp, false)?;
        let certified = v.r2a <= v.r2b + PRED_TOL
            && r1 + v.r2a <= v.r12 + PRED_TOL
            && r1 >= -PRED_TOL
            && v.r2a >= -PRED_TOL;
        if certified {
            out.push(CertifiedPoint {
                rate: RatePair::new(r1, v.r2a),
                split: sp,
                theorem: CertTheorem::Thm8,
            });
        }
    }
    dedupe(&mut out);
    Ok(out)
}

/// Boundary certification for |a| ≤ 1 from inner bound 2 against outer
/// bound 2, including the max-R2 corner.
pub fn certify_case1b(
    params: &GaussianChannelParams<f64>,
    grid: &GridSpec,
) -> Result<Vec<CertifiedPoint>, GaussError> {
    if classify_case(params) != CaseTag::AtMostOne {
        return Err(GaussError::CaseMismatch("certification needs |a| <= 1".into()));
    }
    let mut out = Vec::new();
    for p2pp in linspace(grid.split_steps, 0.0, params.p2) {
        let r2 = half_log2_1p_f64(p2pp);
        let r12_of = |r21: f64, r2s: f64| -> Option<f64> {
            let cap = (1.0 - r21 * r21 - r2s * r2s) * params.p2;
            Some(z_side_term(params, r21, r2s) + half_log2_1p_f64(cap))
        };
        let Some((r12, b21, b2s)) = disk_argmax(grid, params.p2, p2pp, r12_of) else {
            continue;
        };
        let Some(sp) = split_with_dprime(params, b21, b2s, p2pp) else { continue };
        let v = inner1b_rates(params, &sp, false)?;
        if r12 - r2 <= v.r1 + PRED_TOL && r12 - r2 >= -PRED_TOL {
            out.push(CertifiedPoint {
                rate: RatePair::new(r12 - r2, r2),
                split: sp,
                theorem: CertTheorem::Thm9,
            });
        }
    }
    if let Some(r1) = thm9_max_r2_limit(params) {
        if r1 >= 0.0 {
            out.push(CertifiedPoint {
                rate: RatePair::new(r1, half_log2_1p_f64(params.p2)),
                split: SplitParams { rho21: 0.0, rho2s: 0.0, p2_prime: 0.0, p2_dprime: params.p2 },
                theorem: CertTheorem::Thm9,
            });
        }
    }
    dedupe(&mut out);
    Ok(out)
}

/// The R1 extent of the certified max-R2 segment for |a| ≤ 1 (inner bound 2
/// at ρ = 0, P2′ = 0).
pub fn thm9_max_r2_limit(params: &GaussianChannelParams<f64>) -> Option<f64> {
    let sp = SplitParams { rho21: 0.0, rho2s: 0.0, p2_prime: 0.0, p2_dprime: params.p2 };
    let v = inner1b_rates(params, &sp, false).ok()?;
    let r2 = half_log2_1p_f64(params.p2);
    Some(v.r1.min(v.r12 - r2))
}

fn split_with_dprime(
    params: &GaussianChannelParams<f64>,
    rho21: f64,
    rho2s: f64,
    p2pp: f64,
) -> Option<SplitParams<f64>> {
    let cap = (1.0 - rho21 * rho21 - rho2s * rho2s) * params.p2;
    if cap < p2pp - 1e-12 {
        return None;
    }
    Some(SplitParams {
        rho21,
        rho2s,
        p2_prime: (cap - p2pp).max(0.0),
        p2_dprime: p2pp,
    })
}

fn dedupe(pts: &mut Vec<CertifiedPoint>) {
    pts.sort_by(|a, b| {
        a.rate
            .r2
            .partial_cmp(&b.rate.r2)
            .unwrap()
            .then(a.rate.r1.partial_cmp(&b.rate.r1).unwrap())
    });
    pts.dedup_by(|a, b| {
        (a.rate.r1 - b.rate.r1).abs() < 1e-12 && (a.rate.r2 - b.rate.r2).abs() < 1e-12
    });
}

/// Full capacity frontier under a caller-asserted channel condition.
///
/// The matching theorem is chosen by the interference case and the asserted
/// condition; asking for a pair with no theorem is a case mismatch, and
/// `None` is an error since the conditions cannot be checked internally.
pub fn capacity_region(
    params: &GaussianChannelParams<f64>,
    asserted: Option<AssertedCondition>,
    grid: &GridSpec,
) -> Result<RateFrontier, GaussError> {
    let cond = asserted.ok_or(GaussError::MissingAssertion)?;
    let bound = match (classify_case(params), cond) {
        (CaseTag::AboveOne, AssertedCondition::Cond8) => BoundId::Cap7,
        (CaseTag::AtMostOne, AssertedCondition::Cond7) => BoundId::Cap10,
        (CaseTag::AtMostOne, AssertedCondition::Cond8) => BoundId::Cap12,
        (CaseTag::AboveOne, AssertedCondition::Cond7) => {
            return Err(GaussError::CaseMismatch(
                "no capacity theorem for |a| > 1 under condition (7)".into(),
            ))
        }
    };
    frontier(params, bound, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GridSpec;

    fn fig2() -> GaussianChannelParams<f64> {
        GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap()
    }

    fn fig3() -> GaussianChannelParams<f64> {
        GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 0.8, 0.85, 0.9).unwrap()
    }

    #[test]
    fn thm6_certifies_high_r2() {
        let pts = certify_case2(&fig2(), &GridSpec::coarse(33)).unwrap();
        assert!(!pts.is_empty());
        // The certified set covers the top of the R2 range on this channel.
        let max_r2 = pts.iter().map(|p| p.rate.r2).fold(0.0, f64::max);
        assert!((max_r2 - 0.5).abs() < 1e-9);
        let min_r2 = pts.iter().map(|p| p.rate.r2).fold(f64::INFINITY, f64::min);
        assert!(min_r2 > 0.35 && min_r2 < 0.5);
    }

    #[test]
    fn thm6_max_r2_segment() {
        let lim = thm6_max_r2_limit(&fig2()).unwrap();
        assert!(lim > 0.0);
        // Any R1 below the limit pairs with r2(P2) on the boundary.
        assert!(lim < 0.5);
    }

    #[test]
    fn thm6_vacuous_when_case_wrong() {
        assert!(certify_case2(&fig3(), &GridSpec::coarse(9)).is_err());
    }

    #[test]
    fn thm8_thm9_nonempty_on_fig3() {
        let g = GridSpec::coarse(33);
        let a = certify_case1a(&fig3(), &g).unwrap();
        let b = certify_case1b(&fig3(), &g).unwrap();
        assert!(!a.is_empty());
        assert!(!b.is_empty());
        // Thm 8 certifies the low-R2 side, Thm 9 the high-R2 side.
        assert!(a.iter().map(|p| p.rate.r2).fold(f64::INFINITY, f64::min) < 0.01);
        assert!(b.iter().map(|p| p.rate.r2).fold(0.0, f64::max) > 0.45);
    }

    #[test]
    fn capacity_dispatch() {
        let g = GridSpec::coarse(9);
        assert!(matches!(
            capacity_region(&fig2(), None, &g),
            Err(GaussError::MissingAssertion)
        ));
        assert!(matches!(
            capacity_region(&fig2(), Some(AssertedCondition::Cond7), &g),
            Err(GaussError::CaseMismatch(_))
        ));
        assert!(capacity_region(&fig2(), Some(AssertedCondition::Cond8), &g).is_ok());
        assert!(capacity_region(&fig3(), Some(AssertedCondition::Cond7), &g).is_ok());
        assert!(capacity_region(&fig3(), Some(AssertedCondition::Cond8), &g).is_ok());
    }

    #[test]
    fn capacity_zero_power() {
        let p = GaussianChannelParams::<f64>::new(1.0, 0.0, 1.0, 0.8, 0.85, 0.9).unwrap();
        let f = capacity_region(&p, Some(AssertedCondition::Cond7), &GridSpec::coarse(9)).unwrap();
        assert!(f.points.iter().all(|pt| pt.r2.abs() < 1e-12));
    }
}
