//! Structural channel conditions and the less-noisy falsifier.
//!
//! The factorization conditions are decided by kernel extraction: estimate
//! the claimed conditional kernel by ratio from the transition tensor,
//! rebuild the tensor, and accept when the worst per-conditioning-cell total
//! variation stays within 1e-9. The less-noisy conditions quantify over all
//! admissible input laws, so they can only be falsified by search, never
//! proven; a `NotFalsified` verdict records the search resolution.

use super::{Axis, DiscreteChannelSpec, DmcError, JointDistribution, PROB_FLOOR};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The three factorization conditions on `P(y, z | x1, x2, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// Receiver 1 degraded with regard to receiver 2: a single kernel
    /// `P(y | z)` explains the pair output.
    Degraded,
    /// Receiver 2 stronger in decoding W2: kernel `P(y | z, x1, s)`.
    Rx2StrongerW2,
    /// Receiver 1 stronger in decoding W2: kernel `P(z | y, x1, s)`.
    Rx1StrongerW2,
}

impl Condition {
    pub fn parse(s: &str) -> Option<Condition> {
        match s {
            "cond5" | "degraded" | "4" => Some(Condition::Degraded),
            "cond1" | "5" => Some(Condition::Rx2StrongerW2),
            "cond2" | "6" => Some(Condition::Rx1StrongerW2),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Condition::Degraded => "degraded",
            Condition::Rx2StrongerW2 => "rx2-stronger-w2",
            Condition::Rx1StrongerW2 => "rx1-stronger-w2",
        }
    }
}

const COND_TOL: f64 = 1e-9;

/// Does the channel satisfy the given factorization condition?
pub fn check_condition(channel: &DiscreteChannelSpec, which: Condition) -> bool {
    match which {
        Condition::Degraded => kernel_residual(channel, KernelShape::YGivenZ) <= COND_TOL,
        Condition::Rx2StrongerW2 => kernel_residual(channel, KernelShape::YGivenZX1S) <= COND_TOL,
        Condition::Rx1StrongerW2 => kernel_residual(channel, KernelShape::ZGivenYX1S) <= COND_TOL,
    }
}

enum KernelShape {
    YGivenZ,
    YGivenZX1S,
    ZGivenYX1S,
}

/// Worst per-conditioning-cell total variation between the tensor and its
/// reconstruction from the estimated kernel.
fn kernel_residual(ch: &DiscreteChannelSpec, shape: KernelShape) -> f64 {
    let (ny, nz) = (ch.y_size, ch.z_size);
    // Accumulate the kernel numerator and denominator over the contexts the
    // kernel must not depend on, then rebuild and compare.
    let key_size = match shape {
        KernelShape::YGivenZ => nz,
        KernelShape::YGivenZX1S => nz * ch.x1_size * ch.s_size,
        KernelShape::ZGivenYX1S => ny * ch.x1_size * ch.s_size,
    };
    let out_size = match shape {
        KernelShape::ZGivenYX1S => nz,
        _ => ny,
    };
    let mut num = vec![0.0; key_size * out_size];
    let mut den = vec![0.0; key_size];
    for x1 in 0..ch.x1_size {
        for x2 in 0..ch.x2_size {
            for s in 0..ch.s_size {
                for y in 0..ny {
                    for z in 0..nz {
                        let p = ch.p_yz(x1, x2, s, y, z);
                        let (key, out) = match shape {
                            KernelShape::YGivenZ => (z, y),
                            KernelShape::YGivenZX1S => ((z * ch.x1_size + x1) * ch.s_size + s, y),
                            KernelShape::ZGivenYX1S => ((y * ch.x1_size + x1) * ch.s_size + s, z),
                        };
                        num[key * out_size + out] += p;
                        den[key] += p;
                    }
                }
            }
        }
    }
    let kernel = |key: usize, out: usize| -> f64 {
        if den[key] > PROB_FLOOR {
            num[key * out_size + out] / den[key]
        } else if out == 0 {
            1.0
        } else {
            0.0
        }
    };
    let mut worst = 0.0f64;
    for x1 in 0..ch.x1_size {
        for x2 in 0..ch.x2_size {
            for s in 0..ch.s_size {
                let mut tv = 0.0;
                for y in 0..ny {
                    for z in 0..nz {
                        let p = ch.p_yz(x1, x2, s, y, z);
                        let rebuilt = match shape {
                            KernelShape::YGivenZ => ch.p_z(x1, x2, s, z) * kernel(z, y),
                            KernelShape::YGivenZX1S => {
                                let key = (z * ch.x1_size + x1) * ch.s_size + s;
                                ch.p_z(x1, x2, s, z) * kernel(key, y)
                            }
                            KernelShape::ZGivenYX1S => {
                                let key = (y * ch.x1_size + x1) * ch.s_size + s;
                                ch.p_y(x1, x2, s, y) * kernel(key, z)
                            }
                        };
                        tv += 0.5 * (p - rebuilt).abs();
                    }
                }
                worst = worst.max(tv);
            }
        }
    }
    worst
}

/// True iff every `P(z | x1, x2, s)` is 0 or 1 (within 1e-12).
pub fn check_semidet(channel: &DiscreteChannelSpec) -> bool {
    for x1 in 0..channel.x1_size {
        for x2 in 0..channel.x2_size {
            for s in 0..channel.s_size {
                for z in 0..channel.z_size {
                    let p = channel.p_z(x1, x2, s, z);
                    if p.min(1.0 - p).abs() > 1e-12 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Which less-noisy condition to attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LessNoisy {
    /// Condition (7): receiver 2 less noisy, `I(X1;Y) ≤ I(X1;Z)` and
    /// `I(U;Y|X1) ≤ I(U;Z|X1)` for all admissible laws.
    Cond7,
    /// Condition (8): receiver 1 less noisy, `I(X1 U;Y) ≥ I(X1 U;Z)`.
    Cond8,
}

impl LessNoisy {
    pub fn parse(s: &str) -> Option<LessNoisy> {
        match s {
            "cond7" | "7" => Some(LessNoisy::Cond7),
            "cond8" | "8" => Some(LessNoisy::Cond8),
            _ => None,
        }
    }
}

/// Outcome of a falsification search. `NotFalsified` is evidence at the
/// recorded resolution, never a proof.
#[derive(Debug, Clone)]
pub enum Verdict {
    Falsified { witness: JointDistribution, inequality: &'static str, lhs: f64, rhs: f64 },
    NotFalsified { tested: usize, denominator: usize },
}

impl Verdict {
    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }
}

const FALSIFY_TOL: f64 = 1e-9;
const GRID_DENOM: usize = 16;

/// Search admissible joints `P(x1)·P(s)·P(u, x2 | s, x1)·channel` for a
/// violation of the chosen less-noisy condition. The auxiliary cardinality is
/// capped at |X1||X2||S|; the search mixes structured couplings, random
/// draws, and denominator-quantized draws, deterministically from the seed.
pub fn falsify_less_noisy(
    channel: &DiscreteChannelSpec,
    which: LessNoisy,
    budget: usize,
    seed: u64,
) -> Result<Verdict, DmcError> {
    channel.validate()?;
    let u_size = channel.x1_size * channel.x2_size * channel.s_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0usize;
    let mut candidates: Vec<JointDistribution> = Vec::new();

    // Structured openers: U = X2 with uniform inputs, the classical witness
    // shape for broken less-noisy orderings.
    {
        let block_len = u_size * channel.x2_size;
        let mut block = vec![0.0; block_len];
        for x2 in 0..channel.x2_size {
            block[x2 * channel.x2_size + x2] = 1.0 / channel.x2_size as f64;
        }
        let kernel =
            vec![vec![block.clone(); channel.x1_size]; channel.s_size];
        let px1 = vec![1.0 / channel.x1_size as f64; channel.x1_size];
        if let Ok(j) = JointDistribution::from_factors(
            channel,
            &px1,
            &[Axis::U],
            &[u_size],
            &kernel,
        ) {
            candidates.push(j);
        }
    }

    while candidates.len() < budget {
        let quantized = candidates.len() % 2 == 1;
        let px1 = random_simplex(&mut rng, channel.x1_size, quantized);
        let mut kernel = Vec::with_capacity(channel.s_size);
        for _ in 0..channel.s_size {
            let mut per_x1 = Vec::with_capacity(channel.x1_size);
            for _ in 0..channel.x1_size {
                per_x1.push(random_simplex(&mut rng, u_size * channel.x2_size, quantized));
            }
            kernel.push(per_x1);
        }
        if let Ok(j) =
            JointDistribution::from_factors(channel, &px1, &[Axis::U], &[u_size], &kernel)
        {
            candidates.push(j);
        }
    }

    for j in candidates.into_iter().take(budget) {
        tested += 1;
        match which {
            LessNoisy::Cond7 => {
                let lhs1 = j.mutual_info(&[Axis::X1], &[Axis::Y], &[])?;
                let rhs1 = j.mutual_info(&[Axis::X1], &[Axis::Z], &[])?;
                if lhs1 > rhs1 + FALSIFY_TOL {
                    return Ok(Verdict::Falsified {
                        witness: j,
                        inequality: "I(X1;Y) <= I(X1;Z)",
                        lhs: lhs1,
                        rhs: rhs1,
                    });
                }
                let lhs2 = j.mutual_info(&[Axis::U], &[Axis::Y], &[Axis::X1])?;
                let rhs2 = j.mutual_info(&[Axis::U], &[Axis::Z], &[Axis::X1])?;
                if lhs2 > rhs2 + FALSIFY_TOL {
                    return Ok(Verdict::Falsified {
                        witness: j,
                        inequality: "I(U;Y|X1) <= I(U;Z|X1)",
                        lhs: lhs2,
                        rhs: rhs2,
                    });
                }
            }
            LessNoisy::Cond8 => {
                let lhs = j.mutual_info(&[Axis::X1, Axis::U], &[Axis::Y], &[])?;
                let rhs = j.mutual_info(&[Axis::X1, Axis::U], &[Axis::Z], &[])?;
                if lhs < rhs - FALSIFY_TOL {
                    return Ok(Verdict::Falsified {
                        witness: j,
                        inequality: "I(X1 U;Y) >= I(X1 U;Z)",
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(Verdict::NotFalsified { tested, denominator: GRID_DENOM })
}

/// A random point on the probability simplex; optionally snapped to the
/// denominator-16 grid (and renormalized).
fn random_simplex(rng: &mut impl Rng, n: usize, quantize: bool) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -rng.gen_range(1e-12..1.0f64).ln()).collect();
    let sum: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= sum;
    }
    if quantize {
        let d = GRID_DENOM as f64;
        let mut counts: Vec<usize> = v.iter().map(|&p| (p * d).floor() as usize).collect();
        let mut rem: usize = GRID_DENOM - counts.iter().sum::<usize>().min(GRID_DENOM);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let fa = v[a] * d - (v[a] * d).floor();
            let fb = v[b] * d - (v[b] * d).floor();
            fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
        });
        for &i in order.iter() {
            if rem == 0 {
                break;
            }
            counts[i] += 1;
            rem -= 1;
        }
        for (x, &c) in v.iter_mut().zip(counts.iter()) {
            *x = c as f64 / d;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmc::gen;

    #[test]
    fn identity_pair_channel_is_degraded() {
        let ch = gen::xor_state_channel();
        // Y = Z here, so the degraded kernel is the identity.
        assert!(check_condition(&ch, Condition::Degraded));
        assert!(check_condition(&ch, Condition::Rx2StrongerW2));
        assert!(check_condition(&ch, Condition::Rx1StrongerW2));
    }

    #[test]
    fn erasure_of_z_is_degraded() {
        let ch = gen::xor_erasure_channel(0.3);
        assert!(check_condition(&ch, Condition::Degraded));
    }

    #[test]
    fn generic_channel_is_not_degraded() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let ch = gen::random_channel(&mut rng, 2, 2, 2, 2, 2, 0.0);
        assert!(!check_condition(&ch, Condition::Degraded));
    }

    #[test]
    fn semidet_detection() {
        assert!(check_semidet(&gen::xor_state_channel()));
        assert!(check_semidet(&gen::xor_erasure_channel(0.25)));
        let mut noisy = gen::xor_state_channel();
        // Blur one slice: no longer 0/1-valued in P(z | x1, x2, s).
        noisy.transition[0] = 0.9;
        noisy.transition[1] = 0.0;
        noisy.transition[2] = 0.0;
        noisy.transition[3] = 0.1;
        assert!(!check_semidet(&noisy));
    }

    #[test]
    fn falsifier_on_symmetric_channel() {
        let ch = gen::xor_state_channel(); // Y = Z: both conditions hold with equality
        let v7 = falsify_less_noisy(&ch, LessNoisy::Cond7, 50, 7).unwrap();
        let v8 = falsify_less_noisy(&ch, LessNoisy::Cond8, 50, 7).unwrap();
        assert!(!v7.is_falsified());
        assert!(!v8.is_falsified());
    }

    #[test]
    fn falsifier_finds_witnesses() {
        // Z noiseless copy of X2, Y constant: receiver 1 cannot be less
        // noisy; mirrored channel falsifies the other condition.
        let z_good = gen::one_sided_channel(false);
        let v = falsify_less_noisy(&z_good, LessNoisy::Cond8, 50, 3).unwrap();
        match v {
            Verdict::Falsified { lhs, rhs, .. } => assert!(lhs < rhs),
            _ => panic!("expected falsification"),
        }
        let y_good = gen::one_sided_channel(true);
        let v = falsify_less_noisy(&y_good, LessNoisy::Cond7, 50, 3).unwrap();
        assert!(v.is_falsified());
    }
}
