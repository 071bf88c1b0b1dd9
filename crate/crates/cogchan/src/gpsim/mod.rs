//! Desk-scale Monte-Carlo simulation of the layered random-coding scheme:
//! superposition, rate splitting, and Gel'fand–Pinsker binning on tiny
//! discrete channels.
//!
//! Codebooks are drawn i.i.d. from the generation law's conditionals, bins
//! are scanned in ascending index order (ties: smallest index wins), and all
//! randomness derives from the configured seed, so identical configurations
//! reproduce identical results bit for bit. Encoder failures (no typical
//! candidate in a bin) are recorded per layer instead of silently
//! transmitting index 1, keeping failure accounting disjoint from
//! decoding-error accounting; the total error combines both.
//!
//! Typicality is strong (letter-frequency) typicality: for every cell of the
//! joint alphabet `A`, the empirical frequency must lie within `ε·|A|` of
//! the model probability, and cells of probability zero must not occur.

use crate::dmc::{Axis, DiscreteChannelSpec, JointDistribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpError {
    #[error("codebooks exceed the memory cap of 2^26 symbols ({0} requested)")]
    MemoryCap(u128),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("generation law rejected: {0}")]
    BadGenDist(String),
}

/// Layer at which bin selection can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layer {
    T,
    U,
    V,
}

/// Simulation parameters. Message rates `(R1, R21, R22)` and bin rates
/// `(R̃1, R̃21, R̃22)` are in bits per channel use; codebook index spaces
/// have `2^⌈n·R⌉` entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub rates: [f64; 3],
    pub bin_rates: [f64; 3],
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
}

const MEMORY_CAP_SYMBOLS: u128 = 1 << 26;

impl SimConfig {
    fn index_count(&self, rate: f64) -> usize {
        1usize << ((self.n as f64 * rate).ceil() as u32)
    }

    pub fn validate(&self) -> Result<(), GpError> {
        if self.n == 0 {
            return Err(GpError::InvalidConfig("blocklength must be >= 1".into()));
        }
        if self.epsilon <= 0.0 {
            return Err(GpError::InvalidConfig("epsilon must be positive".into()));
        }
        if self.rates.iter().chain(self.bin_rates.iter()).any(|&r| r < 0.0 || !r.is_finite()) {
            return Err(GpError::InvalidConfig("rates must be finite and nonnegative".into()));
        }
        Ok(())
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_seed(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix(seed ^ splitmix(tag) ^ splitmix(index))
}

fn sample(rng: &mut ChaCha8Rng, probs: &[f64]) -> usize {
    let x: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if x < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Letter-frequency typicality limits for one joint table at blocklength n.
struct CellLimits {
    max: Vec<usize>,
    min: Vec<usize>,
}

fn cell_limits(probs: &[f64], n: usize, eps: f64) -> CellLimits {
    let slack = eps * probs.len() as f64;
    let mut max = Vec::with_capacity(probs.len());
    let mut min = Vec::with_capacity(probs.len());
    for &p in probs {
        if p <= crate::dmc::PROB_FLOOR {
            max.push(0);
            min.push(0);
        } else {
            max.push(((p + slack) * n as f64).floor() as usize);
            min.push((((p - slack) * n as f64).ceil()).max(0.0) as usize);
        }
    }
    CellLimits { max, min }
}

/// Layered codebooks plus the per-symbol kernels and typicality targets
/// derived from the generation law and the channel.
pub struct LayeredCodebooks {
    pub n: usize,
    /// Index space sizes: (m1, b1, m21, b21, m22, b22).
    pub sizes: [usize; 6],
    x1_size: usize,
    t_size: usize,
    u_size: usize,
    v_size: usize,
    x2_size: usize,
    s_size: usize,
    y_size: usize,
    z_size: usize,
    /// Codewords, flat: x1[w1][i], t[(w1·b1+v1)][i], etc.
    x1: Vec<u8>,
    t: Vec<u8>,
    u: Vec<u8>,
    v: Vec<u8>,
    /// P(x2 | t, u, v, x1, s), flat over (t, u, v, x1, s) then x2.
    x2_kernel: Vec<f64>,
    /// Typicality targets: P(x1, s, t), P(x1, s, t, u), P(x1, s, t, u, v),
    /// P(x1, t, u, y), P(x1, t, u, v, z), flattened row-major.
    enc_t: Vec<f64>,
    enc_u: Vec<f64>,
    enc_v: Vec<f64>,
    dec_y: Vec<f64>,
    dec_z: Vec<f64>,
}

/// Build the layered codebooks from the channel and generation law.
///
/// `gen_dist` must carry axes (X1, S, T, U, V, X2) with the cognitive
/// factorization and a state marginal matching the channel; Y/Z axes, if
/// present, are ignored and re-derived from the channel.
pub fn build_codebooks(
    channel: &DiscreteChannelSpec,
    gen_dist: &JointDistribution,
    cfg: &SimConfig,
) -> Result<LayeredCodebooks, GpError> {
    cfg.validate()?;
    channel.validate().map_err(|e| GpError::BadGenDist(e.to_string()))?;
    for axis in [Axis::X1, Axis::S, Axis::T, Axis::U, Axis::V, Axis::X2] {
        if !gen_dist.has_axis(axis) {
            return Err(GpError::BadGenDist(format!("missing axis {}", axis.name())));
        }
    }
    gen_dist
        .check_cognitive_factorization(1e-9)
        .map_err(|e| GpError::BadGenDist(e.to_string()))?;
    let dim = |a: Axis| gen_dist.dim_of(a).unwrap();
    let (x1_size, s_size) = (dim(Axis::X1), dim(Axis::S));
    let (t_size, u_size, v_size, x2_size) =
        (dim(Axis::T), dim(Axis::U), dim(Axis::V), dim(Axis::X2));
    if x1_size != channel.x1_size || s_size != channel.s_size || x2_size != channel.x2_size {
        return Err(GpError::BadGenDist("generation law does not match the channel".into()));
    }
    let state_m = marginal_of(gen_dist, &[Axis::S]);
    for (a, b) in state_m.iter().zip(channel.state_pmf.iter()) {
        if (a - b).abs() > 1e-9 {
            return Err(GpError::BadGenDist("state law does not match the channel".into()));
        }
    }

    let m1 = cfg.index_count(cfg.rates[0]);
    let b1 = cfg.index_count(cfg.bin_rates[0]);
    let m21 = cfg.index_count(cfg.rates[1]);
    let b21 = cfg.index_count(cfg.bin_rates[1]);
    let m22 = cfg.index_count(cfg.rates[2]);
    let b22 = cfg.index_count(cfg.bin_rates[2]);
    let sizes = [m1, b1, m21, b21, m22, b22];
    let total_words =
        (m1 as u128) + (m1 * b1) as u128 + (m1 * b1 * m21 * b21) as u128
            + (m1 * b1 * m21 * b21 * m22 * b22) as u128;
    let total_symbols = total_words * cfg.n as u128;
    if total_symbols > MEMORY_CAP_SYMBOLS {
        return Err(GpError::MemoryCap(total_symbols));
    }

    // Generation kernels marginalized over the state (code construction does
    // not see S) and the encoder/decoder typicality targets.
    let p_x1 = marginal_of(gen_dist, &[Axis::X1]);
    let k_t = conditional(gen_dist, &[Axis::T], &[Axis::X1]);
    let k_u = conditional(gen_dist, &[Axis::U], &[Axis::X1, Axis::T]);
    let k_v = conditional(gen_dist, &[Axis::V], &[Axis::X1, Axis::T, Axis::U]);
    let x2_kernel =
        conditional(gen_dist, &[Axis::X2], &[Axis::T, Axis::U, Axis::V, Axis::X1, Axis::S]);

    let enc_t = marginal_of(gen_dist, &[Axis::X1, Axis::S, Axis::T]);
    let enc_u = marginal_of(gen_dist, &[Axis::X1, Axis::S, Axis::T, Axis::U]);
    let enc_v = marginal_of(gen_dist, &[Axis::X1, Axis::S, Axis::T, Axis::U, Axis::V]);

    // Full law including channel outputs for the decoder targets.
    let full = extend_with_channel(gen_dist, channel);
    let dec_y = marginal_of(&full, &[Axis::X1, Axis::T, Axis::U, Axis::Y]);
    let dec_z = marginal_of(&full, &[Axis::X1, Axis::T, Axis::U, Axis::V, Axis::Z]);

    // Draw the codebooks in a fixed order from the seed.
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0xC0DE, 0));
    let mut x1 = vec![0u8; m1 * n];
    for w in 0..m1 {
        for i in 0..n {
            x1[w * n + i] = sample(&mut rng, &p_x1) as u8;
        }
    }
    let mut t = vec![0u8; m1 * b1 * n];
    for w in 0..m1 {
        for v1 in 0..b1 {
            for i in 0..n {
                let x1v = x1[w * n + i] as usize;
                t[(w * b1 + v1) * n + i] =
                    sample(&mut rng, &k_t[x1v * t_size..(x1v + 1) * t_size]) as u8;
            }
        }
    }
    let mut u = vec![0u8; m1 * b1 * m21 * b21 * n];
    for wt in 0..m1 * b1 {
        for wu in 0..m21 * b21 {
            for i in 0..n {
                let x1v = x1[(wt / b1) * n + i] as usize;
                let tv = t[wt * n + i] as usize;
                let key = x1v * t_size + tv;
                u[(wt * m21 * b21 + wu) * n + i] =
                    sample(&mut rng, &k_u[key * u_size..(key + 1) * u_size]) as u8;
            }
        }
    }
    let mut v = vec![0u8; m1 * b1 * m21 * b21 * m22 * b22 * n];
    for wtu in 0..m1 * b1 * m21 * b21 {
        for wv in 0..m22 * b22 {
            for i in 0..n {
                let x1v = x1[(wtu / (b1 * m21 * b21)) * n + i] as usize;
                let tv = t[(wtu / (m21 * b21)) * n + i] as usize;
                let uv = u[wtu * n + i] as usize;
                let key = (x1v * t_size + tv) * u_size + uv;
                v[(wtu * m22 * b22 + wv) * n + i] =
                    sample(&mut rng, &k_v[key * v_size..(key + 1) * v_size]) as u8;
            }
        }
    }

    Ok(LayeredCodebooks {
        n,
        sizes,
        x1_size,
        t_size,
        u_size,
        v_size,
        x2_size,
        s_size,
        y_size: channel.y_size,
        z_size: channel.z_size,
        x1,
        t,
        u,
        v,
        x2_kernel,
        enc_t,
        enc_u,
        enc_v,
        dec_y,
        dec_z,
    })
}

fn marginal_of(j: &JointDistribution, axes: &[Axis]) -> Vec<f64> {
    let idx: Vec<usize> = axes.iter().map(|&a| j.axis_index(a).unwrap()).collect();
    j.marginal(&idx)
}

/// Conditional kernel P(target | cond), flat over cond then target.
fn conditional(j: &JointDistribution, target: &[Axis], cond: &[Axis]) -> Vec<f64> {
    let mut idx: Vec<usize> = cond.iter().map(|&a| j.axis_index(a).unwrap()).collect();
    idx.extend(target.iter().map(|&a| j.axis_index(a).unwrap()));
    let joint = j.marginal(&idx);
    let cond_m = j.marginal(&idx[..cond.len()]);
    let tsize: usize = target.iter().map(|&a| j.dim_of(a).unwrap()).product();
    let mut out = vec![0.0; joint.len()];
    for (k, chunk) in joint.chunks(tsize).enumerate() {
        let d = cond_m[k];
        for (i, &p) in chunk.iter().enumerate() {
            out[k * tsize + i] = if d > crate::dmc::PROB_FLOOR {
                p / d
            } else if i == 0 {
                1.0
            } else {
                0.0
            };
        }
    }
    out
}

/// Extend a generation law over (X1,S,T,U,V,X2) with channel outputs.
fn extend_with_channel(
    gen: &JointDistribution,
    channel: &DiscreteChannelSpec,
) -> JointDistribution {
    let axes = [Axis::X1, Axis::S, Axis::T, Axis::U, Axis::V, Axis::X2];
    let idx: Vec<usize> = axes.iter().map(|&a| gen.axis_index(a).unwrap()).collect();
    let front = gen.marginal(&idx);
    let dims: Vec<usize> = axes.iter().map(|&a| gen.dim_of(a).unwrap()).collect();
    let (ny, nz) = (channel.y_size, channel.z_size);
    let mut full_dims = dims.clone();
    full_dims.extend([ny, nz]);
    let mut probs = vec![0.0; front.len() * ny * nz];
    let mut flat = 0usize;
    for (k, &pf) in front.iter().enumerate() {
        // Unflatten (x1, s, _, _, _, x2) from the row-major front index.
        let mut rem = k;
        let mut coords = [0usize; 6];
        for i in (0..6).rev() {
            coords[i] = rem % dims[i];
            rem /= dims[i];
        }
        let (x1, s, x2) = (coords[0], coords[1], coords[5]);
        for y in 0..ny {
            for z in 0..nz {
                probs[flat] = pf * channel.p_yz(x1, x2, s, y, z);
                flat += 1;
            }
        }
    }
    let mut full_axes = axes.to_vec();
    full_axes.extend([Axis::Y, Axis::Z]);
    JointDistribution::new(full_axes, full_dims, probs).expect("extended law well-formed")
}

/// Is the tuple of per-symbol cells typical for the table? `cells[i]` is the
/// flattened joint-alphabet cell of symbol i.
fn typical(cells: impl Iterator<Item = usize>, limits: &CellLimits, scratch: &mut [usize]) -> bool {
    scratch.iter_mut().for_each(|c| *c = 0);
    for cell in cells {
        scratch[cell] += 1;
        if scratch[cell] > limits.max[cell] {
            return false;
        }
    }
    scratch.iter().zip(limits.min.iter()).all(|(&c, &m)| c >= m)
}

/// Encoder output or the layer that ran out of typical bin candidates.
pub type EncodeOutcome = Result<(Vec<u8>, Vec<u8>), Layer>;

/// Sequential bin selection (t, then u, then v; ascending index, first hit
/// wins) followed by the symbol-wise channel-input draw.
pub fn encode(
    cb: &LayeredCodebooks,
    w1: usize,
    w21: usize,
    w22: usize,
    s_seq: &[u8],
    eps: f64,
    x2_seed: u64,
) -> EncodeOutcome {
    let n = cb.n;
    let [_, b1, _, b21, _, b22] = cb.sizes;
    let x1 = &cb.x1[w1 * n..(w1 + 1) * n];

    let lim_t = cell_limits(&cb.enc_t, n, eps);
    let mut scratch_t = vec![0usize; cb.enc_t.len()];
    let mut chosen_t = None;
    for v1 in 0..b1 {
        let t = &cb.t[(w1 * b1 + v1) * n..(w1 * b1 + v1 + 1) * n];
        let cells = (0..n).map(|i| {
            ((x1[i] as usize * cb.s_size) + s_seq[i] as usize) * cb.t_size + t[i] as usize
        });
        if typical(cells, &lim_t, &mut scratch_t) {
            chosen_t = Some(v1);
            break;
        }
    }
    let Some(v1) = chosen_t else { return Err(Layer::T) };
    let t = &cb.t[(w1 * b1 + v1) * n..(w1 * b1 + v1 + 1) * n];

    let lim_u = cell_limits(&cb.enc_u, n, eps);
    let mut scratch_u = vec![0usize; cb.enc_u.len()];
    let mut chosen_u = None;
    let wt = w1 * b1 + v1;
    for v21 in 0..b21 {
        let ui = wt * cb.sizes[2] * b21 + w21 * b21 + v21;
        let u = &cb.u[ui * n..(ui + 1) * n];
        let cells = (0..n).map(|i| {
            (((x1[i] as usize * cb.s_size) + s_seq[i] as usize) * cb.t_size + t[i] as usize)
                * cb.u_size
                + u[i] as usize
        });
        if typical(cells, &lim_u, &mut scratch_u) {
            chosen_u = Some(v21);
            break;
        }
    }
    let Some(v21) = chosen_u else { return Err(Layer::U) };
    let wtu = wt * cb.sizes[2] * b21 + w21 * b21 + v21;
    let u = &cb.u[wtu * n..(wtu + 1) * n];

    let lim_v = cell_limits(&cb.enc_v, n, eps);
    let mut scratch_v = vec![0usize; cb.enc_v.len()];
    let mut chosen_v = None;
    for v22 in 0..b22 {
        let vi = wtu * cb.sizes[4] * b22 + w22 * b22 + v22;
        let v = &cb.v[vi * n..(vi + 1) * n];
        let cells = (0..n).map(|i| {
            ((((x1[i] as usize * cb.s_size) + s_seq[i] as usize) * cb.t_size + t[i] as usize)
                * cb.u_size
                + u[i] as usize)
                * cb.v_size
                + v[i] as usize
        });
        if typical(cells, &lim_v, &mut scratch_v) {
            chosen_v = Some(v22);
            break;
        }
    }
    let Some(v22) = chosen_v else { return Err(Layer::V) };
    let vi = wtu * cb.sizes[4] * b22 + w22 * b22 + v22;
    let v = &cb.v[vi * n..(vi + 1) * n];

    let mut rng = ChaCha8Rng::seed_from_u64(x2_seed);
    let mut x2 = vec![0u8; n];
    for i in 0..n {
        let key = (((t[i] as usize * cb.u_size + u[i] as usize) * cb.v_size + v[i] as usize)
            * cb.x1_size
            + x1[i] as usize)
            * cb.s_size
            + s_seq[i] as usize;
        x2[i] =
            sample(&mut rng, &cb.x2_kernel[key * cb.x2_size..(key + 1) * cb.x2_size]) as u8;
    }
    Ok((x1.to_vec(), x2))
}

/// Receiver-1 decoding: exhaustive joint-typicality search for
/// (ŵ1, v̂1, ŵ21, v̂21); fails on zero candidates or on candidates that
/// disagree about ŵ1 (the common message is all receiver 1 must get right).
pub fn decode_y(cb: &LayeredCodebooks, y_seq: &[u8], eps: f64) -> Option<(usize, usize, usize, usize)> {
    let n = cb.n;
    let [m1, b1, m21, b21, _, _] = cb.sizes;
    let limits = cell_limits(&cb.dec_y, n, eps);
    let mut scratch = vec![0usize; cb.dec_y.len()];
    let mut found: Option<(usize, usize, usize, usize)> = None;
    for w1 in 0..m1 {
        let x1 = &cb.x1[w1 * n..(w1 + 1) * n];
        for v1 in 0..b1 {
            let t = &cb.t[(w1 * b1 + v1) * n..(w1 * b1 + v1 + 1) * n];
            let wt = w1 * b1 + v1;
            for w21 in 0..m21 {
                for v21 in 0..b21 {
                    let ui = wt * m21 * b21 + w21 * b21 + v21;
                    let u = &cb.u[ui * n..(ui + 1) * n];
                    let cells = (0..n).map(|i| {
                        ((x1[i] as usize * cb.t_size + t[i] as usize) * cb.u_size
                            + u[i] as usize)
                            * cb.y_size
                            + y_seq[i] as usize
                    });
                    if typical(cells, &limits, &mut scratch) {
                        match found {
                            None => found = Some((w1, v1, w21, v21)),
                            Some((fw1, ..)) if fw1 != w1 => return None,
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    found
}

/// Receiver-2 decoding: exhaustive search over the full tuple; fails on zero
/// candidates or on candidates that disagree about (ŵ1, ŵ21, ŵ22).
pub fn decode_z(
    cb: &LayeredCodebooks,
    z_seq: &[u8],
    eps: f64,
) -> Option<(usize, usize, usize, usize, usize, usize)> {
    let n = cb.n;
    let [m1, b1, m21, b21, m22, b22] = cb.sizes;
    let limits = cell_limits(&cb.dec_z, n, eps);
    let mut scratch = vec![0usize; cb.dec_z.len()];
    let mut found: Option<(usize, usize, usize, usize, usize, usize)> = None;
    for w1 in 0..m1 {
        let x1 = &cb.x1[w1 * n..(w1 + 1) * n];
        for v1 in 0..b1 {
            let t = &cb.t[(w1 * b1 + v1) * n..(w1 * b1 + v1 + 1) * n];
            let wt = w1 * b1 + v1;
            for w21 in 0..m21 {
                for v21 in 0..b21 {
                    let wtu = wt * m21 * b21 + w21 * b21 + v21;
                    let u = &cb.u[wtu * n..(wtu + 1) * n];
                    for w22 in 0..m22 {
                        for v22 in 0..b22 {
                            let vi = wtu * m22 * b22 + w22 * b22 + v22;
                            let v = &cb.v[vi * n..(vi + 1) * n];
                            let cells = (0..n).map(|i| {
                                (((x1[i] as usize * cb.t_size + t[i] as usize) * cb.u_size
                                    + u[i] as usize)
                                    * cb.v_size
                                    + v[i] as usize)
                                    * cb.z_size
                                    + z_seq[i] as usize
                            });
                            if typical(cells, &limits, &mut scratch) {
                                match found {
                                    None => found = Some((w1, v1, w21, v21, w22, v22)),
                                    Some((fw1, _, fw21, _, fw22, _))
                                        if (fw1, fw21, fw22) != (w1, w21, w22) =>
                                    {
                                        return None
                                    }
                                    _ => {}
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    found
}

/// Aggregated simulation outcome. Rates are fractions of all trials; encoder
/// failures and decoding errors are disjoint counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimResult {
    pub n: usize,
    pub trials: u64,
    pub enc_fail_t: f64,
    pub enc_fail_u: f64,
    pub enc_fail_v: f64,
    pub err_y: f64,
    pub err_z: f64,
    pub err_total: f64,
    /// 95% binomial half-widths for (err_y, err_z, err_total).
    pub half_widths: [f64; 3],
}

/// Run the full encode → transmit → decode pipeline for `cfg.trials`
/// independent trials. Deterministic given the configuration.
pub fn simulate(
    channel: &DiscreteChannelSpec,
    gen_dist: &JointDistribution,
    cfg: &SimConfig,
) -> Result<SimResult, GpError> {
    let cb = build_codebooks(channel, gen_dist, cfg)?;
    let [m1, _, m21, _, m22, _] = cb.sizes;
    let counts: Vec<[u64; 6]> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x7121A1, trial));
            let w1 = rng.gen_range(0..m1);
            let w21 = rng.gen_range(0..m21);
            let w22 = rng.gen_range(0..m22);
            let s_seq: Vec<u8> =
                (0..cfg.n).map(|_| sample(&mut rng, &channel.state_pmf) as u8).collect();
            // counts: [enc_t, enc_u, enc_v, err_y, err_z, err_total]
            let mut c = [0u64; 6];
            match encode(
                &cb,
                w1,
                w21,
                w22,
                &s_seq,
                cfg.epsilon,
                derive_seed(cfg.seed, 0xF2, trial),
            ) {
                Err(Layer::T) => {
                    c[0] = 1;
                    c[5] = 1;
                }
                Err(Layer::U) => {
                    c[1] = 1;
                    c[5] = 1;
                }
                Err(Layer::V) => {
                    c[2] = 1;
                    c[5] = 1;
                }
                Ok((x1_seq, x2_seq)) => {
                    let mut y_seq = vec![0u8; cfg.n];
                    let mut z_seq = vec![0u8; cfg.n];
                    for i in 0..cfg.n {
                        let mut probs =
                            Vec::with_capacity(channel.y_size * channel.z_size);
                        for y in 0..channel.y_size {
                            for z in 0..channel.z_size {
                                probs.push(channel.p_yz(
                                    x1_seq[i] as usize,
                                    x2_seq[i] as usize,
                                    s_seq[i] as usize,
                                    y,
                                    z,
                                ));
                            }
                        }
                        let yz = sample(&mut rng, &probs);
                        y_seq[i] = (yz / channel.z_size) as u8;
                        z_seq[i] = (yz % channel.z_size) as u8;
                    }
                    let y_ok = matches!(decode_y(&cb, &y_seq, cfg.epsilon), Some((d1, ..)) if d1 == w1);
                    let z_ok = matches!(
                        decode_z(&cb, &z_seq, cfg.epsilon),
                        Some((d1, _, d21, _, d22, _)) if (d1, d21, d22) == (w1, w21, w22)
                    );
                    if !y_ok {
                        c[3] = 1;
                    }
                    if !z_ok {
                        c[4] = 1;
                    }
                    if !y_ok || !z_ok {
                        c[5] = 1;
                    }
                }
            }
            c
        })
        .collect();
    let mut total = [0u64; 6];
    for c in counts {
        for (t, v) in total.iter_mut().zip(c.iter()) {
            *t += v;
        }
    }
    let rate = |x: u64| x as f64 / cfg.trials as f64;
    let hw = |p: f64| 1.96 * (p * (1.0 - p) / cfg.trials as f64).sqrt();
    let (err_y, err_z, err_total) = (rate(total[3]), rate(total[4]), rate(total[5]));
    Ok(SimResult {
        n: cfg.n,
        trials: cfg.trials,
        enc_fail_t: rate(total[0]),
        enc_fail_u: rate(total[1]),
        enc_fail_v: rate(total[2]),
        err_y,
        err_z,
        err_total,
        half_widths: [hw(err_y), hw(err_z), hw(err_total)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmc::gen;

    /// Generation law for the dirty-paper test channel: constant X1/T/U,
    /// V uniform and independent of S, X2 = V ⊕ S.
    pub(crate) fn xor_gen_dist() -> (DiscreteChannelSpec, JointDistribution) {
        let ch = gen::xor_state_channel();
        // aux (T, U, V) with T, U constant; block over (t,u,v,x2) per (s,x1).
        let mut blocks = vec![vec![vec![0.0; 1 * 1 * 2 * 2]; 1]; 2];
        for s in 0..2usize {
            for v in 0..2usize {
                let x2 = v ^ s;
                blocks[s][0][v * 2 + x2] = 0.5;
            }
        }
        let j = JointDistribution::from_factors(
            &ch,
            &[1.0],
            &[Axis::T, Axis::U, Axis::V],
            &[1, 1, 2],
            &blocks,
        )
        .unwrap();
        (ch, j)
    }

    fn base_cfg() -> SimConfig {
        SimConfig {
            n: 16,
            rates: [0.0, 0.0, 0.5],
            bin_rates: [0.0, 0.0, 0.15],
            epsilon: 0.05,
            trials: 200,
            seed: 11,
        }
    }

    #[test]
    fn codebook_sizes_follow_rates() {
        let (ch, j) = xor_gen_dist();
        let cfg = SimConfig { n: 8, rates: [0.25, 0.0, 0.0], ..base_cfg() };
        let cb = build_codebooks(&ch, &j, &cfg).unwrap();
        assert_eq!(cb.sizes[0], 4); // 2^ceil(8 * 0.25)
        assert_eq!(cb.sizes[2], 1);
    }

    #[test]
    fn memory_cap_enforced() {
        let (ch, j) = xor_gen_dist();
        let cfg = SimConfig { n: 24, rates: [0.0, 0.0, 1.3], ..base_cfg() };
        assert!(matches!(build_codebooks(&ch, &j, &cfg), Err(GpError::MemoryCap(_))));
    }

    #[test]
    fn codeword_letter_frequencies_concentrate() {
        // Empirical V-codeword frequencies within 3 sigma of uniform.
        let (ch, j) = xor_gen_dist();
        let cfg = SimConfig { n: 24, trials: 1, ..base_cfg() };
        let cb = build_codebooks(&ch, &j, &cfg).unwrap();
        let total = cb.v.len() as f64;
        let ones = cb.v.iter().filter(|&&x| x == 1).count() as f64;
        let sigma = (0.5 * 0.5 / total).sqrt();
        assert!((ones / total - 0.5).abs() < 3.0 * sigma, "freq = {}", ones / total);
    }

    #[test]
    fn zero_rate_decodes_perfectly_with_loose_epsilon() {
        let (ch, j) = xor_gen_dist();
        let cfg = SimConfig {
            n: 12,
            rates: [0.0, 0.0, 0.0],
            bin_rates: [0.0, 0.0, 0.25],
            epsilon: 0.5,
            trials: 100,
            seed: 5,
        };
        let r = simulate(&ch, &j, &cfg).unwrap();
        assert_eq!(r.err_total, 0.0, "{r:?}");
    }

    #[test]
    fn simulation_reproducible() {
        let (ch, j) = xor_gen_dist();
        let cfg = SimConfig { trials: 50, ..base_cfg() };
        let a = simulate(&ch, &j, &cfg).unwrap();
        let b = simulate(&ch, &j, &cfg).unwrap();
        assert_eq!(a.err_z.to_bits(), b.err_z.to_bits());
        assert_eq!(a.err_total.to_bits(), b.err_total.to_bits());
    }

    #[test]
    fn insufficient_bin_rate_fails_encoder() {
        // Correlate V with S but give the V layer no bin slack: selection
        // must fail often. Here V = S exactly and R̃22 = 0 forces a single
        // candidate per message, typical only when it matches s^n.
        let ch = gen::xor_state_channel();
        let mut blocks = vec![vec![vec![0.0; 4]; 1]; 2];
        for s in 0..2usize {
            // v = s with probability 1; x2 = v ^ s = 0.
            blocks[s][0][s * 2 + 0] = 1.0;
        }
        let j = JointDistribution::from_factors(
            &ch,
            &[1.0],
            &[Axis::T, Axis::U, Axis::V],
            &[1, 1, 2],
            &blocks,
        )
        .unwrap();
        let cfg = SimConfig {
            n: 16,
            rates: [0.0, 0.0, 0.0],
            bin_rates: [0.0, 0.0, 0.0],
            epsilon: 0.05,
            trials: 100,
            seed: 9,
        };
        let r = simulate(&ch, &j, &cfg).unwrap();
        // I(V;S) = 1 bit but the bin rate is zero: failure dominates.
        assert!(r.enc_fail_v > 0.5, "{r:?}");
    }
}
