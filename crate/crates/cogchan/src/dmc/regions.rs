//! Bound evaluation on explicit joint distributions.
//!
//! Each evaluator reads the cited theorem's mutual-information bounds off a
//! [`JointDistribution`] whose axes carry the theorem's auxiliary variables,
//! after checking the factorization or Markov preconditions the theorem
//! assumes. Values are right-hand sides in bits; regions over (R1, R2)
//! convert to exact-rational polygons for containment work.

use super::conditions::{check_condition, check_semidet, Condition};
use super::polygon::RatePolygon;
use super::{Axis, DmcError, JointDistribution};
use serde::{Deserialize, Serialize};

/// Linear combination of rate variables bounded by one inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateCombo {
    R1,
    R2,
    Sum,
    /// R1 + R21 (rate-split form).
    R1R21,
    /// R22 alone.
    R22,
    /// R21 + R22.
    R21R22,
    /// R1 + R21 + R22.
    R1R21R22,
}

impl RateCombo {
    /// Coefficients on (R1, R2) for combos that live in the rate plane.
    fn plane_coeffs(&self) -> Option<(i64, i64)> {
        match self {
            RateCombo::R1 => Some((1, 0)),
            RateCombo::R2 => Some((0, 1)),
            RateCombo::Sum => Some((1, 1)),
            _ => None,
        }
    }
}

/// One named bound: `combo ≤ value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateBound {
    pub label: &'static str,
    pub combo: RateCombo,
    pub value: f64,
}

/// Evaluated bound set for one theorem at one joint, with any validity flag
/// the theorem carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionIneqs {
    pub theorem: &'static str,
    pub bounds: Vec<RateBound>,
    /// Value and truth of the region-validity condition, where one exists
    /// (e.g. the rate-splitting layer's binning rate being affordable).
    pub validity: Option<(f64, bool)>,
}

impl RegionIneqs {
    fn new(theorem: &'static str) -> Self {
        RegionIneqs { theorem, bounds: Vec::new(), validity: None }
    }

    fn push(&mut self, label: &'static str, combo: RateCombo, value: f64) {
        self.bounds.push(RateBound { label, combo, value });
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.bounds.iter().find(|b| b.label == label).map(|b| b.value)
    }

    /// The (R1, R2) polygon of the bounds (combos outside the plane are
    /// rejected; use Fourier–Motzkin for rate-split systems).
    pub fn polygon(&self) -> Result<RatePolygon, DmcError> {
        let mut rows = Vec::with_capacity(self.bounds.len());
        for b in &self.bounds {
            let (a1, a2) = b.combo.plane_coeffs().ok_or_else(|| {
                DmcError::InvalidDistribution(format!(
                    "bound {} is not in the (R1, R2) plane",
                    b.label
                ))
            })?;
            rows.push((a1, a2, b.value));
        }
        Ok(RatePolygon::from_bounds(&rows))
    }

    /// Float maximum of `w1·R1 + w2·R2` over the region (optimizer scoring).
    pub fn maximize_f64(&self, w1: f64, w2: f64) -> Option<f64> {
        let mut rows = Vec::with_capacity(self.bounds.len());
        for b in &self.bounds {
            let (a1, a2) = b.combo.plane_coeffs()?;
            rows.push((a1 as f64, a2 as f64, b.value));
        }
        super::polygon::polygon_max_f64(&rows, w1, w2)
    }
}

const FACTOR_TOL: f64 = 1e-10;

type Mi<'a> = &'a JointDistribution;

fn mi(j: Mi, a: &[Axis], b: &[Axis], c: &[Axis]) -> Result<f64, DmcError> {
    j.mutual_info(a, b, c)
}

use Axis::{K, S, T, U, V, X1, X2, Y, Z};

// ---------------------------------------------------------------------------
// Rate-splitting achievable region and its eliminations
// ---------------------------------------------------------------------------

/// The rate-splitting achievable region: five bounds over (R1, R21, R22)
/// with R2 = R21 + R22.
pub fn eval_lemma1(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, T, U, V, X2, Y, Z])?;
    j.check_cognitive_factorization(FACTOR_TOL)?;
    let mut r = RegionIneqs::new("lemma1");
    r.push(
        "r1_r21",
        RateCombo::R1R21,
        mi(j, &[T, U, X1], &[Y], &[])? - mi(j, &[T, U], &[S], &[X1])?,
    );
    r.push(
        "r22",
        RateCombo::R22,
        mi(j, &[V], &[Z], &[U, T, X1])? - mi(j, &[V], &[S], &[U, T, X1])?,
    );
    r.push(
        "r21_r22_a",
        RateCombo::R21R22,
        mi(j, &[U, V], &[Z], &[X1, T])? - mi(j, &[U, V], &[S], &[X1, T])?,
    );
    r.push(
        "r21_r22_b",
        RateCombo::R21R22,
        mi(j, &[T, U, V], &[Z], &[X1])? - mi(j, &[T, U, V], &[S], &[X1])?,
    );
    r.push(
        "sum",
        RateCombo::R1R21R22,
        mi(j, &[T, U, V, X1], &[Z], &[])? - mi(j, &[T, U, V], &[S], &[X1])?,
    );
    Ok(r)
}

/// The main inner bound: five bounds over (R1, R2) plus the validity flag
/// requiring the private layer's Gel'fand–Pinsker rate to be nonnegative.
pub fn eval_thm1_inner(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, T, U, V, X2, Y, Z])?;
    j.check_cognitive_factorization(FACTOR_TOL)?;
    let mut r = RegionIneqs::new("thm1_inner");
    r.push("r1", RateCombo::R1, mi(j, &[X1, T, U], &[Y], &[])? - mi(j, &[T, U], &[S], &[X1])?);
    r.push(
        "r2_a",
        RateCombo::R2,
        mi(j, &[U, V], &[Z], &[X1, T])? - mi(j, &[U, V], &[S], &[X1, T])?,
    );
    r.push(
        "r2_b",
        RateCombo::R2,
        mi(j, &[T, U, V], &[Z], &[X1])? - mi(j, &[T, U, V], &[S], &[X1])?,
    );
    r.push(
        "sum_a",
        RateCombo::Sum,
        mi(j, &[X1, T, U, V], &[Z], &[])? - mi(j, &[T, U, V], &[S], &[X1])?,
    );
    r.push(
        "sum_b",
        RateCombo::Sum,
        mi(j, &[X1, T, U], &[Y], &[])? + mi(j, &[V], &[Z], &[X1, T, U])?
            - mi(j, &[T, U, V], &[S], &[X1])?,
    );
    let flag = mi(j, &[V], &[Z], &[U, T, X1])? - mi(j, &[V], &[S], &[U, T, X1])?;
    r.validity = Some((flag, flag >= -1e-12));
    Ok(r)
}

/// Inner bound without rate splitting (no U axis): four bounds plus flag.
pub fn eval_cor1_inner(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, T, V, X2, Y, Z])?;
    j.forbid(&[U])?;
    j.check_cognitive_factorization(FACTOR_TOL)?;
    let mut r = RegionIneqs::new("cor1_inner");
    r.push("r1", RateCombo::R1, mi(j, &[X1, T], &[Y], &[])? - mi(j, &[T], &[S], &[X1])?);
    r.push("r2_a", RateCombo::R2, mi(j, &[V], &[Z], &[X1, T])? - mi(j, &[V], &[S], &[X1, T])?);
    r.push("r2_b", RateCombo::R2, mi(j, &[T, V], &[Z], &[X1])? - mi(j, &[T, V], &[S], &[X1])?);
    r.push(
        "sum",
        RateCombo::Sum,
        mi(j, &[X1, T, V], &[Z], &[])? - mi(j, &[T, V], &[S], &[X1])?,
    );
    let flag = mi(j, &[V], &[Z], &[T, X1])? - mi(j, &[V], &[S], &[T, X1])?;
    r.validity = Some((flag, flag >= -1e-12));
    Ok(r)
}

/// Outer bound: three bounds under the chain T ↔ UV ↔ X1X2S ↔ YZ.
pub fn eval_thm2_outer(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, T, U, V, X2, Y, Z])?;
    check_markov_t_uv(j, FACTOR_TOL)?;
    let mut r = RegionIneqs::new("thm2_outer");
    r.push("r1", RateCombo::R1, mi(j, &[X1, T, U], &[Y], &[])? - mi(j, &[T, U], &[S], &[X1])?);
    r.push("r2", RateCombo::R2, mi(j, &[T, V], &[Z], &[X1])? - mi(j, &[T, V], &[S], &[X1])?);
    r.push(
        "sum",
        RateCombo::Sum,
        mi(j, &[X1, T, V], &[Z], &[])? - mi(j, &[T, V], &[S], &[X1])?,
    );
    Ok(r)
}

/// Verify T ⊥ (X1, X2, S, Y, Z) | (U, V) by kernel reconstruction.
fn check_markov_t_uv(j: Mi, tol: f64) -> Result<(), DmcError> {
    let rest: Vec<Axis> = [X1, X2, S, Y, Z].into_iter().collect();
    let residual = conditional_independence_residual(j, T, &[U, V], &rest);
    if residual > tol {
        return Err(DmcError::MarkovViolation(residual));
    }
    Ok(())
}

/// Total-variation residual of `P(target, rest | cond) =
/// P(target | cond) · P(rest | cond)`, summed over the joint.
pub fn conditional_independence_residual(
    j: Mi,
    target: Axis,
    cond: &[Axis],
    rest: &[Axis],
) -> f64 {
    let it = j.axis_index(target).expect("target axis");
    let icond: Vec<usize> = cond.iter().map(|&a| j.axis_index(a).expect("cond axis")).collect();
    let irest: Vec<usize> = rest.iter().map(|&a| j.axis_index(a).expect("rest axis")).collect();
    let m_cond = j.marginal(&icond);
    let mut tc = icond.clone();
    tc.push(it);
    let m_tc = j.marginal(&tc);
    let mut cr = icond.clone();
    cr.extend(&irest);
    let m_cr = j.marginal(&cr);
    let mut tcr = icond.clone();
    tcr.push(it);
    tcr.extend(&irest);
    let m_tcr = j.marginal(&tcr);

    let dt = j.dims()[it];
    let drest: usize = irest.iter().map(|&i| j.dims()[i]).product();
    let dcond: usize = icond.iter().map(|&i| j.dims()[i]).product::<usize>().max(1);
    let mut tv = 0.0;
    for ck in 0..dcond {
        let pc = m_cond[ck];
        if pc <= super::PROB_FLOOR {
            continue;
        }
        for t in 0..dt {
            for rk in 0..drest {
                let joint = m_tcr[(ck * dt + t) * drest + rk];
                let product = m_tc[ck * dt + t] * m_cr[ck * drest + rk] / pc;
                tv += 0.5 * (joint - product).abs();
            }
        }
    }
    tv
}

// ---------------------------------------------------------------------------
// Degraded / semideterministic / less-noisy special cases
// ---------------------------------------------------------------------------

/// Inner and outer bounds for the degraded channel.
pub fn eval_thm3(j: Mi) -> Result<(RegionIneqs, RegionIneqs), DmcError> {
    j.require(&[X1, S, T, V, X2, Y, Z])?;
    let channel = j.implied_channel()?;
    if !check_condition(&channel, Condition::Degraded) {
        return Err(DmcError::NotDegraded);
    }
    let mut inner = RegionIneqs::new("thm3_inner");
    inner.push("r1", RateCombo::R1, mi(j, &[X1, T], &[Y], &[])? - mi(j, &[T], &[S], &[X1])?);
    inner.push(
        "r2_a",
        RateCombo::R2,
        mi(j, &[V], &[Z], &[X1, T])? - mi(j, &[V], &[S], &[X1, T])?,
    );
    inner.push(
        "r2_b",
        RateCombo::R2,
        mi(j, &[T, V], &[Z], &[X1])? - mi(j, &[T, V], &[S], &[X1])?,
    );
    let flag = mi(j, &[V], &[Z], &[T, X1])? - mi(j, &[V], &[S], &[T, X1])?;
    inner.validity = Some((flag, flag >= -1e-12));

    let mut outer = RegionIneqs::new("thm3_outer");
    outer.push("r1", RateCombo::R1, mi(j, &[X1, T], &[Y], &[])? - mi(j, &[T], &[S], &[X1])?);
    outer.push(
        "r2",
        RateCombo::R2,
        mi(j, &[T, V], &[Z], &[X1])? - mi(j, &[T, V], &[S], &[X1])?,
    );
    Ok((inner, outer))
}

/// Capacity of the degraded semideterministic channel (auxiliary T only).
pub fn eval_thm4_capacity(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, T, X2, Y, Z])?;
    j.forbid(&[U, V])?;
    let channel = j.implied_channel()?;
    if !check_semidet(&channel) {
        return Err(DmcError::NotSemidet);
    }
    if !check_condition(&channel, Condition::Degraded) {
        return Err(DmcError::NotDegraded);
    }
    let mut r = RegionIneqs::new("thm4");
    r.push("r1", RateCombo::R1, mi(j, &[X1, T], &[Y], &[])? - mi(j, &[T], &[S], &[X1])?);
    r.push("r2_a", RateCombo::R2, j.entropy(&[Z, X1, T, S])? - j.entropy(&[X1, T, S])?);
    let h_z_x1 = j.entropy(&[Z, X1])? - j.entropy(&[X1])?;
    r.push("r2_b", RateCombo::R2, h_z_x1 - mi(j, &[T, Z], &[S], &[X1])?);
    Ok(r)
}

/// Capacity when receiver 1 is less noisy (condition (8)); the caller must
/// assert the condition, which the toolkit can only falsify, not prove.
pub fn eval_thm5_capacity(j: Mi, cond8_asserted: bool) -> Result<RegionIneqs, DmcError> {
    if !cond8_asserted {
        return Err(DmcError::MissingAssertion);
    }
    j.require(&[X1, S, U, X2, Y, Z])?;
    let mut r = RegionIneqs::new("thm5");
    r.push("r2", RateCombo::R2, mi(j, &[U], &[Z], &[X1])? - mi(j, &[U], &[S], &[X1])?);
    r.push("sum", RateCombo::Sum, mi(j, &[X1, U], &[Z], &[])? - mi(j, &[U], &[S], &[X1])?);
    Ok(r)
}

// ---------------------------------------------------------------------------
// State at both transmitter 2 and receiver 2
// ---------------------------------------------------------------------------

/// Capacity region with the state known at transmitter 2 and receiver 2.
pub fn eval_thm13_capacity(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, U, X2, Y, Z])?;
    j.check_cognitive_factorization(FACTOR_TOL)?;
    let mut r = RegionIneqs::new("thm13");
    r.push("r1", RateCombo::R1, mi(j, &[X1, U], &[Y], &[])? - mi(j, &[U], &[S], &[X1])?);
    r.push("r2", RateCombo::R2, mi(j, &[X2], &[Z], &[S, X1])?);
    r.push("sum_a", RateCombo::Sum, mi(j, &[X1, X2], &[Z], &[S])?);
    r.push(
        "sum_b",
        RateCombo::Sum,
        mi(j, &[X1, U], &[Y], &[])? + mi(j, &[X2], &[Z], &[X1, U, S])?
            - mi(j, &[U], &[S], &[X1])?,
    );
    Ok(r)
}

/// The two-auxiliary outer bound used in the converse of the both-side-state
/// capacity (axes K and T).
pub fn eval_outer_bothstate(j: Mi) -> Result<RegionIneqs, DmcError> {
    j.require(&[X1, S, K, T, X2, Y, Z])?;
    j.check_cognitive_factorization(FACTOR_TOL)?;
    let mut r = RegionIneqs::new("outer_bothstate");
    r.push("r1", RateCombo::R1, mi(j, &[K, X1], &[Y], &[])? - mi(j, &[K], &[S], &[X1])?);
    r.push("r2", RateCombo::R2, mi(j, &[X2], &[Z], &[S, X1])?);
    r.push("sum_a", RateCombo::Sum, mi(j, &[X1, X2], &[Z], &[S])?);
    r.push(
        "sum_b",
        RateCombo::Sum,
        mi(j, &[T, K, X1], &[Y], &[])? - mi(j, &[T, K], &[S], &[X1])?
            + mi(j, &[X2], &[Z], &[X1, T, K, S])?,
    );
    Ok(r)
}

/// Result of reducing the two-auxiliary outer bound into the single-auxiliary
/// capacity form by choosing U := K or U := (K, T).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCaseReduction {
    /// 1 when the discarded layer's Gel'fand–Pinsker rate is nonpositive
    /// (U := K), 2 otherwise (U := KT).
    pub case: u8,
    pub contained: bool,
    /// Worst slack of the outer polygon's vertices inside the reduced
    /// region's polygon, in bits (nonnegative means contained).
    pub margin: f64,
}

/// Check that the two-auxiliary outer region is inside the single-auxiliary
/// capacity region at the reduction the converse picks.
pub fn two_case_reduction_check(j: Mi) -> Result<TwoCaseReduction, DmcError> {
    let outer = eval_outer_bothstate(j)?;
    let bracket = mi(j, &[T], &[Y], &[K, X1])? - mi(j, &[T], &[S], &[K, X1])?;
    let ulist: &[Axis] = if bracket <= 0.0 { &[K] } else { &[K, T] };
    let case = if bracket <= 0.0 { 1 } else { 2 };
    let mut reduced = RegionIneqs::new("thm13_reduced");
    let ux1: Vec<Axis> = ulist.iter().cloned().chain([X1]).collect();
    let uxs: Vec<Axis> = [X1].iter().cloned().chain(ulist.iter().cloned()).chain([S]).collect();
    reduced.push(
        "r1",
        RateCombo::R1,
        mi(j, &ux1, &[Y], &[])? - mi(j, ulist, &[S], &[X1])?,
    );
    reduced.push("r2", RateCombo::R2, mi(j, &[X2], &[Z], &[S, X1])?);
    reduced.push("sum_a", RateCombo::Sum, mi(j, &[X1, X2], &[Z], &[S])?);
    reduced.push(
        "sum_b",
        RateCombo::Sum,
        mi(j, &ux1, &[Y], &[])? + mi(j, &[X2], &[Z], &uxs)? - mi(j, ulist, &[S], &[X1])?,
    );
    let margin = outer.polygon()?.containment_margin(&reduced.polygon()?);
    Ok(TwoCaseReduction { case, contained: margin >= -1e-12, margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmc::gen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lemma1_state_constant_reduces_to_plain_mi() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let j = gen::random_cognitive_joint(&mut rng, &gen::GenOpts { s_size: 1, ..Default::default() });
        let r = eval_lemma1(&j).unwrap();
        // With a constant state every correction term I(...;S|...) vanishes.
        let a = j.mutual_info(&[T, U, X1], &[Y], &[]).unwrap();
        assert!((r.get("r1_r21").unwrap() - a).abs() < 1e-12);
    }

    #[test]
    fn lemma1_aux_constant_first_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let j = gen::random_cognitive_joint(
            &mut rng,
            &gen::GenOpts { t_size: 1, u_size: 1, v_size: 1, ..Default::default() },
        );
        let r = eval_lemma1(&j).unwrap();
        let expect = j.mutual_info(&[X1], &[Y], &[]).unwrap();
        assert!((r.get("r1_r21").unwrap() - expect).abs() < 1e-10);
    }

    #[test]
    fn thm1_validity_flag_zero_for_constant_v() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let j = gen::random_cognitive_joint(&mut rng, &gen::GenOpts { v_size: 1, ..Default::default() });
        let r = eval_thm1_inner(&j).unwrap();
        let (flag, ok) = r.validity.unwrap();
        assert!(flag.abs() < 1e-12);
        assert!(ok);
    }

    #[test]
    fn cor1_rejects_joint_with_u() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let j = gen::random_cognitive_joint(&mut rng, &Default::default());
        assert!(matches!(eval_cor1_inner(&j), Err(DmcError::ForbiddenAxis(Axis::U))));
    }

    #[test]
    fn thm2_markov_violation_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // T generated from (S, X1) directly breaks T <-> UV <-> X1 X2 S.
        let j = gen::random_cognitive_joint(
            &mut rng,
            &gen::GenOpts { t_from_uv: false, ..Default::default() },
        );
        assert!(matches!(eval_thm2_outer(&j), Err(DmcError::MarkovViolation(_))));
        let j2 = gen::random_cognitive_joint(&mut rng, &Default::default());
        assert!(eval_thm2_outer(&j2).is_ok());
    }

    #[test]
    fn thm1_inside_thm2_on_embedded_joints() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..25 {
            let j = gen::random_cognitive_joint(
                &mut rng,
                &gen::GenOpts { v_contains_u: true, ..Default::default() },
            );
            let inner = eval_thm1_inner(&j).unwrap();
            let outer = eval_thm2_outer(&j).unwrap();
            let margin = inner.polygon().unwrap().containment_margin(&outer.polygon().unwrap());
            assert!(margin >= -1e-10, "margin = {margin}");
        }
    }

    #[test]
    fn thm3_requires_degraded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let j = gen::random_cognitive_joint(
            &mut rng,
            &gen::GenOpts { u_size: 1, degraded: false, ..Default::default() },
        );
        // A generic random channel is degraded with vanishing probability.
        assert!(matches!(eval_thm3(&strip_u(&j)), Err(DmcError::NotDegraded)));
        let jd = gen::random_cognitive_joint(
            &mut rng,
            &gen::GenOpts { u_size: 1, degraded: true, ..Default::default() },
        );
        let (inner, outer) = eval_thm3(&strip_u(&jd)).unwrap();
        // Inner region is cut by a superset of the outer constraints.
        let margin = inner.polygon().unwrap().containment_margin(&outer.polygon().unwrap());
        assert!(margin >= -1e-10);
    }

    fn strip_u(j: &JointDistribution) -> JointDistribution {
        // Re-tag the joint without a U axis by marginalizing it out.
        let keep: Vec<usize> = (0..j.dims().len())
            .filter(|&i| j.axes()[i] != Axis::U)
            .collect();
        let probs = j.marginal(&keep);
        let axes: Vec<Axis> = keep.iter().map(|&i| j.axes()[i]).collect();
        let dims: Vec<usize> = keep.iter().map(|&i| j.dims()[i]).collect();
        JointDistribution::new(axes, dims, probs).unwrap()
    }

    #[test]
    fn thm5_requires_assertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let j = gen::random_cognitive_joint(
            &mut rng,
            &gen::GenOpts { t_size: 1, v_size: 1, ..Default::default() },
        );
        assert!(matches!(eval_thm5_capacity(&j, false), Err(DmcError::MissingAssertion)));
        assert!(eval_thm5_capacity(&j, true).is_ok());
    }

    #[test]
    fn two_case_reduction_on_random_joints() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen_case2 = false;
        for _ in 0..50 {
            let j = gen::random_bothstate_joint(&mut rng, &Default::default());
            let res = two_case_reduction_check(&j).unwrap();
            assert!(res.contained, "margin = {}", res.margin);
            assert!(res.margin >= -1e-12);
            if res.case == 2 {
                seen_case2 = true;
            }
        }
        assert!(seen_case2, "expected both reduction cases across 50 joints");
    }

    #[test]
    fn two_case_constant_t_is_case1() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let j = gen::random_bothstate_joint(
            &mut rng,
            &gen::BothStateOpts { t_size: 1, ..Default::default() },
        );
        let res = two_case_reduction_check(&j).unwrap();
        assert_eq!(res.case, 1);
        assert!(res.contained);
    }
}
