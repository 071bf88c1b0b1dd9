//! Brute-force region optimization over quantized input laws.
//!
//! Realizes the "for some distribution" maximizations: sweep the admissible
//! laws `P(x1)·P(aux, x2 | s, x1)` (auxiliary cardinalities capped per the
//! theorem), score each by the weighted rate maximum over the theorem's
//! polygon, and keep the best. When the full denominator-k grid is small
//! enough the sweep is exhaustive; otherwise seeded random restarts with
//! local mass-moving ascent. Either path is deterministic given the spec.

use super::regions::{
    eval_cor1_inner, eval_thm13_capacity, eval_thm1_inner, eval_thm3, eval_thm4_capacity,
    eval_thm5_capacity, RegionIneqs,
};
use super::{Axis, DiscreteChannelSpec, DmcError, JointDistribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which theorem's region to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DmcBound {
    Thm1Inner,
    Cor1Inner,
    Thm3Inner,
    Thm4,
    Thm5,
    Thm13,
}

impl DmcBound {
    pub fn parse(s: &str) -> Option<DmcBound> {
        match s {
            "thm1" => Some(DmcBound::Thm1Inner),
            "cor1" => Some(DmcBound::Cor1Inner),
            "thm3" => Some(DmcBound::Thm3Inner),
            "thm4" => Some(DmcBound::Thm4),
            "thm5" => Some(DmcBound::Thm5),
            "thm13" => Some(DmcBound::Thm13),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DmcBound::Thm1Inner => "thm1",
            DmcBound::Cor1Inner => "cor1",
            DmcBound::Thm3Inner => "thm3",
            DmcBound::Thm4 => "thm4",
            DmcBound::Thm5 => "thm5",
            DmcBound::Thm13 => "thm13",
        }
    }

    fn aux_axes(&self) -> &'static [Axis] {
        match self {
            DmcBound::Thm1Inner => &[Axis::T, Axis::U, Axis::V],
            DmcBound::Cor1Inner | DmcBound::Thm3Inner => &[Axis::T, Axis::V],
            DmcBound::Thm4 => &[Axis::T],
            DmcBound::Thm5 | DmcBound::Thm13 => &[Axis::U],
        }
    }

    /// Cardinality cap per auxiliary. The single-auxiliary capacity theorems
    /// state their caps; the multi-auxiliary bounds default to the same
    /// |X1||X2||S| + 1 budget.
    fn cap(&self, ch: &DiscreteChannelSpec) -> usize {
        let base = ch.x1_size * ch.x2_size * ch.s_size;
        match self {
            DmcBound::Thm5 => base,
            _ => base + 1,
        }
    }

    fn eval(&self, j: &JointDistribution) -> Result<RegionIneqs, DmcError> {
        match self {
            DmcBound::Thm1Inner => eval_thm1_inner(j),
            DmcBound::Cor1Inner => eval_cor1_inner(j),
            DmcBound::Thm3Inner => eval_thm3(j).map(|(inner, _)| inner),
            DmcBound::Thm4 => eval_thm4_capacity(j),
            DmcBound::Thm5 => eval_thm5_capacity(j, true),
            DmcBound::Thm13 => eval_thm13_capacity(j),
        }
    }
}

/// Search controls. Exhaustive enumeration triggers when the denominator-k
/// grid has at most `exhaustive_cap` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    /// Denominator of the exhaustive simplex grid.
    pub denom: usize,
    /// Denominator of random-restart starting points.
    pub start_denom: usize,
    /// Largest enumeration size the exhaustive path accepts.
    pub exhaustive_cap: u128,
    pub restarts: usize,
    pub ascent_iters: usize,
    pub seed: u64,
}

impl Default for SearchSpec {
    fn default() -> Self {
        SearchSpec {
            denom: 4,
            start_denom: 16,
            exhaustive_cap: 2_000_000,
            restarts: 32,
            ascent_iters: 300,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub value: f64,
    pub joint: JointDistribution,
    pub evaluated: u64,
    pub exhaustive: bool,
}

/// All length-`parts` nonnegative integer vectors summing to `total`,
/// in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

fn counts_to_probs(counts: &[usize], denom: usize) -> Vec<f64> {
    counts.iter().map(|&c| c as f64 / denom as f64).collect()
}

/// Maximize `w1·R1 + w2·R2` over the theorem's region across admissible
/// quantized laws. `aux_sizes` overrides the default cardinalities (each
/// must stay within the theorem cap).
pub fn optimize_region(
    channel: &DiscreteChannelSpec,
    bound: DmcBound,
    weights: (f64, f64),
    aux_sizes: Option<Vec<usize>>,
    search: &SearchSpec,
) -> Result<OptimizeResult, DmcError> {
    channel.validate()?;
    let axes = bound.aux_axes();
    let cap = bound.cap(channel);
    let sizes = match aux_sizes {
        Some(v) => {
            if v.len() != axes.len() {
                return Err(DmcError::InvalidDistribution(format!(
                    "expected {} auxiliary sizes",
                    axes.len()
                )));
            }
            v
        }
        None => vec![cap.min(4); axes.len()],
    };
    for &s in &sizes {
        if s > cap {
            return Err(DmcError::InfeasibleCaps { got: s, cap });
        }
        if s == 0 {
            return Err(DmcError::InvalidDistribution("auxiliary size 0".into()));
        }
    }
    let aux_total: usize = sizes.iter().product();
    let block_len = aux_total * channel.x2_size;
    let n_blocks = channel.s_size * channel.x1_size;

    let px1_grid = compositions(search.denom, channel.x1_size);
    let block_grid = compositions(search.denom, block_len);
    let total: u128 = (px1_grid.len() as u128)
        * (block_grid.len() as u128).checked_pow(n_blocks as u32).unwrap_or(u128::MAX);

    let score = |px1: &[f64], blocks: &[Vec<f64>]| -> Option<(f64, JointDistribution)> {
        let j = JointDistribution::from_factors_prevalidated(channel, px1, axes, &sizes, blocks);
        let region = bound.eval(&j).ok()?;
        if let Some((_, ok)) = region.validity {
            if !ok {
                return None;
            }
        }
        let v = region.maximize_f64(weights.0, weights.1)?;
        Some((v, j))
    };

    if total <= search.exhaustive_cap {
        // Exhaustive sweep over the denominator-k grid, parallel over the
        // (P(X1), first block) product and merged in index order.
        let outer: Vec<(usize, usize)> = (0..px1_grid.len())
            .flat_map(|pi| (0..block_grid.len()).map(move |b0| (pi, b0)))
            .collect();
        let best = outer
            .par_iter()
            .map(|&(pi, b0)| {
                let px1 = counts_to_probs(&px1_grid[pi], search.denom);
                let mut blocks: Vec<Vec<f64>> =
                    vec![counts_to_probs(&block_grid[b0], search.denom); n_blocks];
                let mut odometer = vec![0usize; n_blocks - 1];
                let mut best: Option<(f64, JointDistribution)> = None;
                let mut count = 0u64;
                loop {
                    for (k, &bi) in odometer.iter().enumerate() {
                        blocks[k + 1] = counts_to_probs(&block_grid[bi], search.denom);
                    }
                    if let Some((v, j)) = score(&px1, &blocks) {
                        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
                            best = Some((v, j));
                        }
                    }
                    count += 1;
                    if !advance(&mut odometer, block_grid.len()) {
                        return (best, count);
                    }
                }
            })
            .collect::<Vec<_>>();
        let mut overall: Option<(f64, JointDistribution)> = None;
        let mut evaluated = 0u64;
        for (b, c) in best {
            evaluated += c;
            if let Some((v, j)) = b {
                if overall.as_ref().map_or(true, |(bv, _)| v > *bv) {
                    overall = Some((v, j));
                }
            }
        }
        let (value, joint) = overall.ok_or_else(|| {
            DmcError::InvalidDistribution("no admissible law in the search grid".into())
        })?;
        Ok(OptimizeResult { value, joint, evaluated, exhaustive: true })
    } else {
        // Random restarts with local mass-moving ascent, merged by restart
        // index for determinism.
        let results: Vec<Option<(f64, JointDistribution)>> = (0..search.restarts)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(search.seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let mut px1 = quantized_simplex(&mut rng, channel.x1_size, search.start_denom);
                let mut blocks: Vec<Vec<f64>> = (0..n_blocks)
                    .map(|_| quantized_simplex(&mut rng, block_len, search.start_denom))
                    .collect();
                let mut best = score(&px1, &blocks);
                let step = 1.0 / search.start_denom as f64;
                for _ in 0..search.ascent_iters {
                    // Propose moving one grid quantum of mass inside one
                    // distribution (P(X1) or one kernel block).
                    let which = rng.gen_range(0..=n_blocks);
                    let (vec_ref, len): (&mut Vec<f64>, usize) = if which == 0 {
                        (&mut px1, channel.x1_size)
                    } else {
                        (&mut blocks[which - 1], block_len)
                    };
                    if len < 2 {
                        continue;
                    }
                    let from = rng.gen_range(0..len);
                    let to = rng.gen_range(0..len);
                    if from == to || vec_ref[from] < step - 1e-12 {
                        continue;
                    }
                    vec_ref[from] -= step;
                    vec_ref[to] += step;
                    let cand = score(&px1, &blocks);
                    let improved = match (&cand, &best) {
                        (Some((cv, _)), Some((bv, _))) => cv > bv,
                        (Some(_), None) => true,
                        _ => false,
                    };
                    if improved {
                        best = cand;
                    } else {
                        // Revert.
                        let vec_ref: &mut Vec<f64> =
                            if which == 0 { &mut px1 } else { &mut blocks[which - 1] };
                        vec_ref[from] += step;
                        vec_ref[to] -= step;
                    }
                }
                best
            })
            .collect();
        let mut overall: Option<(f64, JointDistribution)> = None;
        for b in results.into_iter().flatten() {
            if overall.as_ref().map_or(true, |(bv, _)| b.0 > *bv) {
                overall = Some(b);
            }
        }
        let (value, joint) = overall.ok_or_else(|| {
            DmcError::InvalidDistribution("no admissible law found by the search".into())
        })?;
        Ok(OptimizeResult {
            value,
            joint,
            evaluated: (search.restarts * (search.ascent_iters + 1)) as u64,
            exhaustive: false,
        })
    }
}

/// Advance a mixed-radix odometer; false when it wraps to all zeros.
fn advance(odo: &mut [usize], base: usize) -> bool {
    for k in (0..odo.len()).rev() {
        odo[k] += 1;
        if odo[k] < base {
            return true;
        }
        odo[k] = 0;
    }
    false
}

fn quantized_simplex(rng: &mut impl Rng, n: usize, denom: usize) -> Vec<f64> {
    // Distribute `denom` quanta over n cells uniformly at random.
    let mut counts = vec![0usize; n];
    for _ in 0..denom {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts_to_probs(&counts, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmc::gen;

    #[test]
    fn compositions_count() {
        // C(total + parts - 1, parts - 1)
        assert_eq!(compositions(4, 2).len(), 5);
        assert_eq!(compositions(4, 4).len(), 35);
        assert_eq!(compositions(4, 8).len(), 330);
        for c in compositions(3, 3) {
            assert_eq!(c.iter().sum::<usize>(), 3);
        }
    }

    #[test]
    fn zero_weights_zero_value() {
        let ch = gen::xor_state_channel();
        let r = optimize_region(
            &ch,
            DmcBound::Thm5,
            (0.0, 0.0),
            Some(vec![2]),
            &SearchSpec { denom: 2, ..Default::default() },
        )
        .unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn caps_enforced() {
        let ch = gen::xor_state_channel(); // |X1||X2||S| = 4
        let err = optimize_region(
            &ch,
            DmcBound::Thm5,
            (1.0, 1.0),
            Some(vec![5]),
            &SearchSpec::default(),
        );
        assert!(matches!(err, Err(DmcError::InfeasibleCaps { got: 5, cap: 4 })));
    }

    #[test]
    fn pair_channel_sum_capacity() {
        // Y = Z = (X1, X2), constant state: the thm5 sum optimum over the
        // exhaustive denominator-4 grid is exactly two bits.
        let ch = gen::noiseless_pair_channel();
        let r = optimize_region(
            &ch,
            DmcBound::Thm5,
            (1.0, 1.0),
            Some(vec![4]),
            &SearchSpec::default(),
        )
        .unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.value, 2.0);
    }

    #[test]
    fn bsc_matches_no_state_optimum() {
        // S constant, Z = BSC(0.11)(X2): the only knob is P(X2); the thm5
        // R2 optimum over the denominator-4 grid is 1 - h2(0.11) at the
        // uniform input.
        let p = 0.11f64;
        let mut transition = vec![0.0; 8];
        for x2 in 0..2usize {
            for z in 0..2usize {
                let prob = if x2 == z { 1.0 - p } else { p };
                transition[(x2 * 2 + z) * 2 + z] += prob;
            }
        }
        let ch = DiscreteChannelSpec {
            x1_size: 1,
            x2_size: 2,
            s_size: 1,
            y_size: 2,
            z_size: 2,
            state_pmf: vec![1.0],
            transition,
        };
        let r = optimize_region(
            &ch,
            DmcBound::Thm5,
            (0.0, 1.0),
            Some(vec![2]),
            &SearchSpec::default(),
        )
        .unwrap();
        assert!(r.exhaustive);
        let h2 = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((r.value - (1.0 - h2)).abs() < 1e-12, "value = {}", r.value);
    }
}
