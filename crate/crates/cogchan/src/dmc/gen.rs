//! Seeded random channels and joint distributions for property suites, and a
//! few named channels used throughout the tests and the simulator examples.

use super::{Axis, DiscreteChannelSpec, JointDistribution};
use rand::Rng;

/// A Dirichlet(1) draw on the simplex.
pub fn simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -rng.gen_range(1e-12..1.0f64).ln()).collect();
    let sum: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= sum;
    }
    v
}

/// Random channel `P(y, z | x1, x2, s)` with uniform state law, optionally
/// smoothed toward uniform output so that no transition cell vanishes.
pub fn random_channel(
    rng: &mut impl Rng,
    x1: usize,
    x2: usize,
    s: usize,
    y: usize,
    z: usize,
    smoothing: f64,
) -> DiscreteChannelSpec {
    let mut transition = Vec::with_capacity(x1 * x2 * s * y * z);
    for _ in 0..x1 * x2 * s {
        let mut w = simplex(rng, y * z);
        if smoothing > 0.0 {
            for p in w.iter_mut() {
                *p = (1.0 - smoothing) * *p + smoothing / (y * z) as f64;
            }
        }
        transition.extend(w);
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![1.0 / s as f64; s],
        transition,
    }
}

/// Random degraded channel: `P(z | x1, x2, s)` random, `Y` a fixed random
/// garbling of `Z`.
pub fn random_degraded_channel(
    rng: &mut impl Rng,
    x1: usize,
    x2: usize,
    s: usize,
    y: usize,
    z: usize,
) -> DiscreteChannelSpec {
    let y_given_z: Vec<Vec<f64>> = (0..z).map(|_| simplex(rng, y)).collect();
    let mut transition = vec![0.0; x1 * x2 * s * y * z];
    for c in 0..x1 * x2 * s {
        let pz = simplex(rng, z);
        for (zi, &pzv) in pz.iter().enumerate() {
            for (yi, &k) in y_given_z[zi].iter().enumerate() {
                transition[(c * y + yi) * z + zi] += pzv * k;
            }
        }
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![1.0 / s as f64; s],
        transition,
    }
}

/// Options for [`random_cognitive_joint`].
#[derive(Debug, Clone)]
pub struct GenOpts {
    pub x1_size: usize,
    pub s_size: usize,
    pub t_size: usize,
    pub u_size: usize,
    pub v_size: usize,
    pub x2_size: usize,
    pub y_size: usize,
    pub z_size: usize,
    /// Generate T from (U, V) so the outer bound's Markov chain holds.
    pub t_from_uv: bool,
    /// Make the V axis the composite (U, V′): V then determines U, the
    /// embedding under which the rate-split inner region is comparable to
    /// the outer region on the same joint.
    pub v_contains_u: bool,
    /// Use a degraded channel (Y a garbling of Z).
    pub degraded: bool,
    /// Mix the channel toward uniform output by this weight.
    pub channel_smoothing: f64,
}

impl Default for GenOpts {
    fn default() -> Self {
        GenOpts {
            x1_size: 2,
            s_size: 2,
            t_size: 2,
            u_size: 2,
            v_size: 2,
            x2_size: 2,
            y_size: 2,
            z_size: 2,
            t_from_uv: true,
            v_contains_u: false,
            degraded: false,
            channel_smoothing: 0.0,
        }
    }
}

/// Random joint over (X1, S, T, U, V, X2, Y, Z) with the cognitive
/// factorization `P(x1)·P(s)·P(t, u, v, x2 | s, x1)·P(y, z | x1, x2, s)`.
///
/// With `t_from_uv`, T is drawn from a kernel on (U, V) alone, so the chain
/// T ↔ UV ↔ X1X2S ↔ YZ holds. With `v_contains_u`, the V axis has size
/// `u_size · v_size` and encodes the pair (U, V′).
pub fn random_cognitive_joint(rng: &mut impl Rng, opts: &GenOpts) -> JointDistribution {
    let GenOpts { x1_size, s_size, t_size, u_size, v_size, x2_size, y_size, z_size, .. } = *opts;
    let v_axis = if opts.v_contains_u { u_size * v_size } else { v_size };
    let channel = if opts.degraded {
        random_degraded_channel(rng, x1_size, x2_size, s_size, y_size, z_size)
    } else {
        random_channel(rng, x1_size, x2_size, s_size, y_size, z_size, opts.channel_smoothing)
    };
    let px1 = simplex(rng, x1_size);
    // P(u, v' | s, x1), P(t | u, v'), P(x2 | u, v', x1, s)
    let puv: Vec<Vec<f64>> =
        (0..s_size * x1_size).map(|_| simplex(rng, u_size * v_size)).collect();
    let pt: Vec<Vec<f64>> = (0..u_size * v_size)
        .map(|_| if opts.t_from_uv { simplex(rng, t_size) } else { vec![] })
        .collect();
    let pt_sx1: Vec<Vec<f64>> = (0..s_size * x1_size)
        .map(|_| if opts.t_from_uv { vec![] } else { simplex(rng, t_size) })
        .collect();
    let px2: Vec<Vec<f64>> =
        (0..u_size * v_size * x1_size * s_size).map(|_| simplex(rng, x2_size)).collect();

    // Assemble P(t, u, v_axis, x2 | s, x1) blocks for the factor builder.
    let aux_dims = [t_size, u_size, v_axis];
    let block_len = t_size * u_size * v_axis * x2_size;
    let mut kernel = vec![vec![vec![0.0; block_len]; x1_size]; s_size];
    for s in 0..s_size {
        for x1 in 0..x1_size {
            let uvk = &puv[s * x1_size + x1];
            for u in 0..u_size {
                for vp in 0..v_size {
                    let p_uv = uvk[u * v_size + vp];
                    let tk = if opts.t_from_uv {
                        &pt[u * v_size + vp]
                    } else {
                        &pt_sx1[s * x1_size + x1]
                    };
                    let v = if opts.v_contains_u { u * v_size + vp } else { vp };
                    for (t, &p_t) in tk.iter().enumerate() {
                        let x2k = &px2[((u * v_size + vp) * x1_size + x1) * s_size + s];
                        for (x2, &p_x2) in x2k.iter().enumerate() {
                            let idx = ((t * u_size + u) * v_axis + v) * x2_size + x2;
                            kernel[s][x1][idx] += p_uv * p_t * p_x2;
                        }
                    }
                }
            }
        }
    }
    JointDistribution::from_factors(
        &channel,
        &px1,
        &[Axis::T, Axis::U, Axis::V],
        &aux_dims,
        &kernel,
    )
    .expect("generated joint is well-formed")
}

/// Options for [`random_bothstate_joint`].
#[derive(Debug, Clone)]
pub struct BothStateOpts {
    pub x1_size: usize,
    pub s_size: usize,
    pub k_size: usize,
    pub t_size: usize,
    pub x2_size: usize,
    pub y_size: usize,
    pub z_size: usize,
}

impl Default for BothStateOpts {
    fn default() -> Self {
        BothStateOpts {
            x1_size: 2,
            s_size: 2,
            k_size: 2,
            t_size: 2,
            x2_size: 2,
            y_size: 2,
            z_size: 2,
        }
    }
}

/// Random joint over (X1, S, K, T, X2, Y, Z) with the factorization
/// `P(x1)·P(s)·P(k, t | x1, s)·P(x2 | x1, s, k, t)·P(y, z | x1, x2, s)`.
pub fn random_bothstate_joint(rng: &mut impl Rng, opts: &BothStateOpts) -> JointDistribution {
    let BothStateOpts { x1_size, s_size, k_size, t_size, x2_size, y_size, z_size } = *opts;
    let channel = random_channel(rng, x1_size, x2_size, s_size, y_size, z_size, 0.0);
    let px1 = simplex(rng, x1_size);
    let block_len = k_size * t_size * x2_size;
    let mut kernel = vec![vec![vec![0.0; block_len]; x1_size]; s_size];
    for s in 0..s_size {
        for x1 in 0..x1_size {
            let kt = simplex(rng, k_size * t_size);
            for (kti, &p_kt) in kt.iter().enumerate() {
                let x2k = simplex(rng, x2_size);
                for (x2, &p_x2) in x2k.iter().enumerate() {
                    kernel[s][x1][kti * x2_size + x2] += p_kt * p_x2;
                }
            }
        }
    }
    JointDistribution::from_factors(
        &channel,
        &px1,
        &[Axis::K, Axis::T],
        &[k_size, t_size],
        &kernel,
    )
    .expect("generated joint is well-formed")
}

// ---------------------------------------------------------------------------
// Named channels
// ---------------------------------------------------------------------------

/// Binary `Z = X2 ⊕ S`, `Y = Z`, uniform state, constant X1: the dirty-paper
/// test channel (capacity one bit with the state known at the encoder).
pub fn xor_state_channel() -> DiscreteChannelSpec {
    let (x1, x2, s, y, z) = (1usize, 2usize, 2usize, 2usize, 2usize);
    let mut transition = vec![0.0; x1 * x2 * s * y * z];
    for x2v in 0..2usize {
        for sv in 0..2usize {
            let zv = x2v ^ sv;
            let idx = ((x2v * 2 + sv) * 2 + zv) * 2 + zv;
            transition[idx] = 1.0;
        }
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![0.5, 0.5],
        transition,
    }
}

/// `Z = X2 ⊕ S` with `Y` an erasure of `Z` (erasure symbol 2): a
/// semideterministic degraded channel.
pub fn xor_erasure_channel(erasure: f64) -> DiscreteChannelSpec {
    let (x1, x2, s, y, z) = (1usize, 2usize, 2usize, 3usize, 2usize);
    let mut transition = vec![0.0; x1 * x2 * s * y * z];
    for x2v in 0..2usize {
        for sv in 0..2usize {
            let zv = x2v ^ sv;
            // y = z with prob 1 - erasure, y = 2 with prob erasure
            let base = (x2v * 2 + sv) * y;
            transition[(base + zv) * z + zv] = 1.0 - erasure;
            transition[(base + 2) * z + zv] = erasure;
        }
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![0.5, 0.5],
        transition,
    }
}

/// The noiseless pair channel `Z = (X1, X2)` with constant state and `Y = Z`.
pub fn noiseless_pair_channel() -> DiscreteChannelSpec {
    let (x1, x2, s) = (2usize, 2usize, 1usize);
    let (y, z) = (4usize, 4usize);
    let mut transition = vec![0.0; x1 * x2 * s * y * z];
    for x1v in 0..2usize {
        for x2v in 0..2usize {
            let sym = x1v * 2 + x2v;
            let idx = ((x1v * 2 + x2v) * y + sym) * z + sym;
            transition[idx] = 1.0;
        }
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![1.0],
        transition,
    }
}

/// One receiver sees `X2` noiselessly, the other pure noise; with
/// `good_y = true` receiver 1 is the good one.
pub fn one_sided_channel(good_y: bool) -> DiscreteChannelSpec {
    let (x1, x2, s, y, z) = (2usize, 2usize, 1usize, 2usize, 2usize);
    let mut transition = vec![0.0; x1 * x2 * s * y * z];
    for x1v in 0..x1 {
        for x2v in 0..x2 {
            for o in 0..2usize {
                // the noisy side is uniform over its alphabet
                let (yv, zv, p) = if good_y { (x2v, o, 0.5) } else { (o, x2v, 0.5) };
                let idx = ((x1v * x2 + x2v) * y + yv) * z + zv;
                transition[idx] += p;
            }
        }
    }
    DiscreteChannelSpec {
        x1_size: x1,
        x2_size: x2,
        s_size: s,
        y_size: y,
        z_size: z,
        state_pmf: vec![1.0],
        transition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_channels_are_valid() {
        xor_state_channel().validate().unwrap();
        xor_erasure_channel(0.3).validate().unwrap();
        noiseless_pair_channel().validate().unwrap();
        one_sided_channel(true).validate().unwrap();
        one_sided_channel(false).validate().unwrap();
    }

    #[test]
    fn random_joints_factorize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let j = random_cognitive_joint(&mut rng, &Default::default());
            j.check_cognitive_factorization(1e-10).unwrap();
            let j2 = random_bothstate_joint(&mut rng, &Default::default());
            j2.check_cognitive_factorization(1e-10).unwrap();
        }
    }

    #[test]
    fn composite_v_determines_u() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let j = random_cognitive_joint(
            &mut rng,
            &GenOpts { v_contains_u: true, ..Default::default() },
        );
        // H(U | V) = 0 when V encodes the (U, V') pair.
        let h_uv = j.entropy(&[Axis::U, Axis::V]).unwrap();
        let h_v = j.entropy(&[Axis::V]).unwrap();
        assert!((h_uv - h_v).abs() < 1e-12);
    }
}
