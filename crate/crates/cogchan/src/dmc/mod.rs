//! Finite-alphabet channels with state and explicit joint distributions.
//!
//! A [`DiscreteChannelSpec`] carries the transition tensor
//! `P(y, z | x1, x2, s)` and the state law; a [`JointDistribution`] is a
//! dense probability tensor over role-tagged axes (channel variables plus
//! auxiliary variables) on which the bound evaluators in [`regions`] read
//! their mutual-information expressions. Probabilities below 1e-15 count as
//! zero and `0·log 0 = 0` throughout.

pub mod conditions;
pub mod gen;
pub mod optimize;
pub mod polygon;
pub mod regions;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DmcError {
    #[error("axis sets overlap: {0:?} appears on both sides")]
    AxisOverlap(Axis),
    #[error("axis {0:?} missing from the joint distribution")]
    MissingAxis(Axis),
    #[error("axis {0:?} must be absent for this bound")]
    ForbiddenAxis(Axis),
    #[error("bad factorization: {0}")]
    BadFactorization(String),
    #[error("Markov chain violated: residual {0:.3e}")]
    MarkovViolation(f64),
    #[error("channel is not degraded (receiver 1 vs receiver 2)")]
    NotDegraded,
    #[error("channel is not semideterministic")]
    NotSemidet,
    #[error("evaluation requires a caller-asserted less-noisy condition")]
    MissingAssertion,
    #[error("auxiliary cardinality {got} exceeds the theorem cap {cap}")]
    InfeasibleCaps { got: usize, cap: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

/// Role of an axis in a joint distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X1,
    S,
    T,
    U,
    V,
    K,
    X2,
    Y,
    Z,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::X1 => "X1",
            Axis::S => "S",
            Axis::T => "T",
            Axis::U => "U",
            Axis::V => "V",
            Axis::K => "K",
            Axis::X2 => "X2",
            Axis::Y => "Y",
            Axis::Z => "Z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        Some(match s {
            "X1" | "x1" => Axis::X1,
            "S" | "s" => Axis::S,
            "T" | "t" => Axis::T,
            "U" | "u" => Axis::U,
            "V" | "v" => Axis::V,
            "K" | "k" => Axis::K,
            "X2" | "x2" => Axis::X2,
            "Y" | "y" => Axis::Y,
            "Z" | "z" => Axis::Z,
            _ => return None,
        })
    }
}

pub(crate) const PROB_FLOOR: f64 = 1e-15;

// ---------------------------------------------------------------------------
// Channel
// ---------------------------------------------------------------------------

/// A discrete memoryless channel with state: alphabet sizes, state law, and
/// the transition tensor `P(y, z | x1, x2, s)` stored flat with index
/// `((((x1·|X2| + x2)·|S| + s)·|Y| + y)·|Z| + z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteChannelSpec {
    pub x1_size: usize,
    pub x2_size: usize,
    pub s_size: usize,
    pub y_size: usize,
    pub z_size: usize,
    pub state_pmf: Vec<f64>,
    pub transition: Vec<f64>,
}

impl DiscreteChannelSpec {
    pub fn validate(&self) -> Result<(), DmcError> {
        if self.state_pmf.len() != self.s_size {
            return Err(DmcError::InvalidDistribution("state pmf length mismatch".into()));
        }
        let expect = self.x1_size * self.x2_size * self.s_size * self.y_size * self.z_size;
        if self.transition.len() != expect {
            return Err(DmcError::InvalidDistribution(format!(
                "transition length {} != {}",
                self.transition.len(),
                expect
            )));
        }
        if self
            .transition
            .iter()
            .chain(self.state_pmf.iter())
            .any(|&p| !(0.0..=1.0 + 1e-12).contains(&p))
        {
            return Err(DmcError::InvalidDistribution("probability outside [0, 1]".into()));
        }
        let s_sum: f64 = self.state_pmf.iter().sum();
        if (s_sum - 1.0).abs() > 1e-12 {
            return Err(DmcError::InvalidDistribution("state pmf does not sum to 1".into()));
        }
        for x1 in 0..self.x1_size {
            for x2 in 0..self.x2_size {
                for s in 0..self.s_size {
                    let mut acc = 0.0;
                    for y in 0..self.y_size {
                        for z in 0..self.z_size {
                            acc += self.p_yz(x1, x2, s, y, z);
                        }
                    }
                    if (acc - 1.0).abs() > 1e-12 {
                        return Err(DmcError::InvalidDistribution(format!(
                            "transition slice ({x1},{x2},{s}) sums to {acc}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn p_yz(&self, x1: usize, x2: usize, s: usize, y: usize, z: usize) -> f64 {
        let idx =
            (((x1 * self.x2_size + x2) * self.s_size + s) * self.y_size + y) * self.z_size + z;
        self.transition[idx]
    }

    /// Marginal transition `P(z | x1, x2, s)`.
    pub fn p_z(&self, x1: usize, x2: usize, s: usize, z: usize) -> f64 {
        (0..self.y_size).map(|y| self.p_yz(x1, x2, s, y, z)).sum()
    }

    /// Marginal transition `P(y | x1, x2, s)`.
    pub fn p_y(&self, x1: usize, x2: usize, s: usize, y: usize) -> f64 {
        (0..self.z_size).map(|z| self.p_yz(x1, x2, s, y, z)).sum()
    }
}

// ---------------------------------------------------------------------------
// Joint distributions
// ---------------------------------------------------------------------------

/// Dense probability tensor over role-tagged axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    axes: Vec<Axis>,
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(axes: Vec<Axis>, dims: Vec<usize>, probs: Vec<f64>) -> Result<Self, DmcError> {
        if axes.len() != dims.len() {
            return Err(DmcError::InvalidDistribution("axes/dims length mismatch".into()));
        }
        let mut seen = axes.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != axes.len() {
            return Err(DmcError::InvalidDistribution("duplicate axis role".into()));
        }
        let total: usize = dims.iter().product();
        if probs.len() != total {
            return Err(DmcError::InvalidDistribution("tensor size mismatch".into()));
        }
        if probs.iter().any(|&p| p < -1e-13 || !p.is_finite()) {
            return Err(DmcError::InvalidDistribution("negative or non-finite entry".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(DmcError::InvalidDistribution(format!("tensor sums to {sum}")));
        }
        Ok(JointDistribution { axes, dims, probs })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn axis_index(&self, a: Axis) -> Option<usize> {
        self.axes.iter().position(|&x| x == a)
    }

    pub fn dim_of(&self, a: Axis) -> Option<usize> {
        self.axis_index(a).map(|i| self.dims[i])
    }

    pub fn has_axis(&self, a: Axis) -> bool {
        self.axis_index(a).is_some()
    }

    pub(crate) fn require(&self, axes: &[Axis]) -> Result<(), DmcError> {
        for &a in axes {
            if !self.has_axis(a) {
                return Err(DmcError::MissingAxis(a));
            }
        }
        Ok(())
    }

    pub(crate) fn forbid(&self, axes: &[Axis]) -> Result<(), DmcError> {
        for &a in axes {
            if self.has_axis(a) {
                return Err(DmcError::ForbiddenAxis(a));
            }
        }
        Ok(())
    }

    /// Decompose a flat index into per-axis coordinates.
    #[inline]
    fn coords(&self, mut idx: usize, out: &mut [usize]) {
        for i in (0..self.dims.len()).rev() {
            out[i] = idx % self.dims[i];
            idx /= self.dims[i];
        }
    }

    /// Marginal distribution over a subset of axes (by axis index),
    /// flattened row-major in the given order.
    pub fn marginal(&self, axis_idx: &[usize]) -> Vec<f64> {
        let size: usize = axis_idx.iter().map(|&i| self.dims[i]).product();
        let mut out = vec![0.0; size.max(1)];
        let mut c = vec![0usize; self.dims.len()];
        for (flat, &p) in self.probs.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            self.coords(flat, &mut c);
            let mut key = 0usize;
            for &i in axis_idx {
                key = key * self.dims[i] + c[i];
            }
            out[key] += p;
        }
        out
    }

    /// Shannon entropy of a subset of axes, in bits.
    pub fn entropy(&self, axes: &[Axis]) -> Result<f64, DmcError> {
        self.require(axes)?;
        let idx: Vec<usize> = axes.iter().map(|&a| self.axis_index(a).unwrap()).collect();
        let m = self.marginal(&idx);
        Ok(m.iter().filter(|&&p| p > PROB_FLOOR).map(|&p| -p * p.log2()).sum())
    }

    /// Conditional mutual information `I(A; B | C)` in bits.
    pub fn mutual_info(&self, a: &[Axis], b: &[Axis], c: &[Axis]) -> Result<f64, DmcError> {
        for &x in a {
            if b.contains(&x) {
                return Err(DmcError::AxisOverlap(x));
            }
            if c.contains(&x) {
                return Err(DmcError::AxisOverlap(x));
            }
        }
        for &x in b {
            if c.contains(&x) {
                return Err(DmcError::AxisOverlap(x));
            }
        }
        let ac: Vec<Axis> = a.iter().chain(c.iter()).cloned().collect();
        let bc: Vec<Axis> = b.iter().chain(c.iter()).cloned().collect();
        let abc: Vec<Axis> = a.iter().chain(b.iter()).chain(c.iter()).cloned().collect();
        Ok(self.entropy(&ac)? + self.entropy(&bc)? - self.entropy(c)? - self.entropy(&abc)?)
    }

    /// Total-variation distance to another tensor with identical layout.
    pub fn total_variation(&self, other: &JointDistribution) -> f64 {
        0.5 * self
            .probs
            .iter()
            .zip(other.probs.iter())
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
    }

    /// Build a joint over (X1, S, aux..., X2, Y, Z) from the cognitive
    /// factorization `P(x1)·P(s)·P(aux, x2 | s, x1)·P(y, z | x1, x2, s)`.
    ///
    /// `aux_kernel[s][x1]` is a distribution over the flattened aux × X2
    /// block, row-major in `aux_dims` then X2.
    pub fn from_factors(
        channel: &DiscreteChannelSpec,
        p_x1: &[f64],
        aux_axes: &[Axis],
        aux_dims: &[usize],
        aux_kernel: &[Vec<Vec<f64>>],
    ) -> Result<JointDistribution, DmcError> {
        channel.validate()?;
        if p_x1.len() != channel.x1_size {
            return Err(DmcError::InvalidDistribution("P(X1) length mismatch".into()));
        }
        let aux_total: usize = aux_dims.iter().product();
        let mut axes = vec![Axis::X1, Axis::S];
        axes.extend_from_slice(aux_axes);
        axes.extend_from_slice(&[Axis::X2, Axis::Y, Axis::Z]);
        let mut dims = vec![channel.x1_size, channel.s_size];
        dims.extend_from_slice(aux_dims);
        dims.extend_from_slice(&[channel.x2_size, channel.y_size, channel.z_size]);
        let total: usize = dims.iter().product();
        let mut probs = vec![0.0; total];
        let mut flat = 0usize;
        for x1 in 0..channel.x1_size {
            for s in 0..channel.s_size {
                let block = &aux_kernel[s][x1];
                debug_assert_eq!(block.len(), aux_total * channel.x2_size);
                for aux in 0..aux_total {
                    for x2 in 0..channel.x2_size {
                        let base =
                            p_x1[x1] * channel.state_pmf[s] * block[aux * channel.x2_size + x2];
                        for y in 0..channel.y_size {
                            for z in 0..channel.z_size {
                                probs[flat] = base * channel.p_yz(x1, x2, s, y, z);
                                flat += 1;
                            }
                        }
                    }
                }
            }
        }
        JointDistribution::new(axes, dims, probs)
    }

    /// Optimizer fast path: assemble the joint from a channel validated by
    /// the caller and per-(s, x1) kernel blocks, skipping re-validation.
    pub(crate) fn from_factors_prevalidated(
        channel: &DiscreteChannelSpec,
        p_x1: &[f64],
        aux_axes: &[Axis],
        aux_dims: &[usize],
        blocks: &[Vec<f64>],
    ) -> JointDistribution {
        let aux_total: usize = aux_dims.iter().product();
        let mut axes = vec![Axis::X1, Axis::S];
        axes.extend_from_slice(aux_axes);
        axes.extend_from_slice(&[Axis::X2, Axis::Y, Axis::Z]);
        let mut dims = vec![channel.x1_size, channel.s_size];
        dims.extend_from_slice(aux_dims);
        dims.extend_from_slice(&[channel.x2_size, channel.y_size, channel.z_size]);
        let total: usize = dims.iter().product();
        let mut probs = vec![0.0; total];
        let mut flat = 0usize;
        for x1 in 0..channel.x1_size {
            for s in 0..channel.s_size {
                let block = &blocks[s * channel.x1_size + x1];
                for aux in 0..aux_total {
                    for x2 in 0..channel.x2_size {
                        let base =
                            p_x1[x1] * channel.state_pmf[s] * block[aux * channel.x2_size + x2];
                        for y in 0..channel.y_size {
                            for z in 0..channel.z_size {
                                probs[flat] = base * channel.p_yz(x1, x2, s, y, z);
                                flat += 1;
                            }
                        }
                    }
                }
            }
        }
        JointDistribution { axes, dims, probs }
    }

    /// Check the cognitive factorization
    /// `P = P(x1)·P(s)·P(aux, x2 | s, x1)·P(y, z | x1, x2, s)` by kernel
    /// reconstruction; total variation must stay within `tol`.
    pub fn check_cognitive_factorization(&self, tol: f64) -> Result<(), DmcError> {
        self.require(&[Axis::X1, Axis::S, Axis::X2, Axis::Y, Axis::Z])?;
        let ix1 = self.axis_index(Axis::X1).unwrap();
        let is = self.axis_index(Axis::S).unwrap();
        let n = self.dims.len();
        let front: Vec<usize> =
            (0..n).filter(|&i| !matches!(self.axes[i], Axis::Y | Axis::Z)).collect();
        let chan_cond: Vec<usize> =
            (0..n).filter(|&i| matches!(self.axes[i], Axis::X1 | Axis::X2 | Axis::S)).collect();
        let m_x1 = self.marginal(&[ix1]);
        let m_s = self.marginal(&[is]);
        let m_x1s = self.marginal(&[ix1, is]);
        // Independence of X1 and S.
        let ss = self.dims[is];
        for a in 0..self.dims[ix1] {
            for b in 0..ss {
                if (m_x1s[a * ss + b] - m_x1[a] * m_s[b]).abs() > tol {
                    return Err(DmcError::BadFactorization("X1 and S are correlated".into()));
                }
            }
        }
        // Channel kernel: P(y,z | x1,x2,s) must reproduce the tensor from the
        // front marginal.
        let m_front = self.marginal(&front);
        let m_chan_cond = self.marginal(&chan_cond);
        let m_chan = {
            let mut idxs = chan_cond.clone();
            idxs.extend((0..n).filter(|&i| matches!(self.axes[i], Axis::Y | Axis::Z)));
            self.marginal(&idxs)
        };
        let yz_size: usize = (0..n)
            .filter(|&i| matches!(self.axes[i], Axis::Y | Axis::Z))
            .map(|i| self.dims[i])
            .product();
        let mut c = vec![0usize; n];
        let mut tv = 0.0;
        for (flat, &p) in self.probs.iter().enumerate() {
            self.coords(flat, &mut c);
            let mut fkey = 0usize;
            for &i in &front {
                fkey = fkey * self.dims[i] + c[i];
            }
            let mut ckey = 0usize;
            for &i in &chan_cond {
                ckey = ckey * self.dims[i] + c[i];
            }
            let mut yzkey = 0usize;
            for i in 0..n {
                if matches!(self.axes[i], Axis::Y | Axis::Z) {
                    yzkey = yzkey * self.dims[i] + c[i];
                }
            }
            let denom = m_chan_cond[ckey];
            let kernel =
                if denom > PROB_FLOOR { m_chan[ckey * yz_size + yzkey] / denom } else { 0.0 };
            tv += 0.5 * (p - m_front[fkey] * kernel).abs();
        }
        if tv > tol {
            return Err(DmcError::BadFactorization(format!("reconstruction TV = {tv:.3e}")));
        }
        Ok(())
    }

    /// Extract the channel implied by the joint. Zero-mass (x1, x2, s) cells
    /// get a point-mass row, which only matters for condition checks there.
    pub fn implied_channel(&self) -> Result<DiscreteChannelSpec, DmcError> {
        self.require(&[Axis::X1, Axis::S, Axis::X2, Axis::Y, Axis::Z])?;
        let (ix1, is, ix2, iy, iz) = (
            self.axis_index(Axis::X1).unwrap(),
            self.axis_index(Axis::S).unwrap(),
            self.axis_index(Axis::X2).unwrap(),
            self.axis_index(Axis::Y).unwrap(),
            self.axis_index(Axis::Z).unwrap(),
        );
        let (nx1, ns, nx2, ny, nz) =
            (self.dims[ix1], self.dims[is], self.dims[ix2], self.dims[iy], self.dims[iz]);
        let cond = self.marginal(&[ix1, ix2, is]);
        let full = self.marginal(&[ix1, ix2, is, iy, iz]);
        let mut transition = vec![0.0; nx1 * nx2 * ns * ny * nz];
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                for s in 0..ns {
                    let ckey = (x1 * nx2 + x2) * ns + s;
                    for y in 0..ny {
                        for z in 0..nz {
                            let idx = (ckey * ny + y) * nz + z;
                            transition[idx] = if cond[ckey] > PROB_FLOOR {
                                full[idx] / cond[ckey]
                            } else if y == 0 && z == 0 {
                                1.0
                            } else {
                                0.0
                            };
                        }
                    }
                }
            }
        }
        let state_pmf = self.marginal(&[is]);
        Ok(DiscreteChannelSpec {
            x1_size: nx1,
            x2_size: nx2,
            s_size: ns,
            y_size: ny,
            z_size: nz,
            state_pmf,
            transition,
        })
    }
}

/// Standalone conditional mutual information on a joint (spec-level entry
/// point mirroring [`JointDistribution::mutual_info`]).
pub fn mutual_info(
    joint: &JointDistribution,
    a: &[Axis],
    b: &[Axis],
    c: &[Axis],
) -> Result<f64, DmcError> {
    joint.mutual_info(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Noiseless binary identity channel Y = Z = X2, constant X1 and S.
    fn identity_channel() -> DiscreteChannelSpec {
        let mut transition = vec![0.0; 2 * 2 * 2];
        for x2 in 0..2usize {
            let idx = (x2 * 2 + x2) * 2 + x2;
            transition[idx] = 1.0;
        }
        DiscreteChannelSpec {
            x1_size: 1,
            x2_size: 2,
            s_size: 1,
            y_size: 2,
            z_size: 2,
            state_pmf: vec![1.0],
            transition,
        }
    }

    fn uniform_x2_joint() -> JointDistribution {
        let ch = identity_channel();
        JointDistribution::from_factors(&ch, &[1.0], &[], &[], &[vec![vec![0.5, 0.5]]]).unwrap()
    }

    #[test]
    fn independent_axes_zero_mi() {
        let j = uniform_x2_joint();
        assert!(j.mutual_info(&[Axis::X1], &[Axis::X2], &[]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn noiseless_binary_one_bit() {
        let j = uniform_x2_joint();
        let v = j.mutual_info(&[Axis::X2], &[Axis::Y], &[]).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn bsc_half_bit() {
        // BSC(0.11) with uniform input: I = 1 - h2(0.11), about half a bit.
        let p = 0.11f64;
        let mut transition = vec![0.0; 8];
        for x2 in 0..2usize {
            for z in 0..2usize {
                let prob = if x2 == z { 1.0 - p } else { p };
                let idx = (x2 * 2 + z) * 2 + z; // y tracks z
                transition[idx] += prob;
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
        let j = JointDistribution::from_factors(&ch, &[1.0], &[], &[], &[vec![vec![0.5, 0.5]]])
            .unwrap();
        let v = j.mutual_info(&[Axis::X2], &[Axis::Z], &[]).unwrap();
        let h2 = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((v - (1.0 - h2)).abs() < 1e-12);
        assert!((v - 0.5).abs() < 1e-3);
    }

    #[test]
    fn axis_overlap_rejected() {
        let j = uniform_x2_joint();
        assert!(matches!(
            j.mutual_info(&[Axis::X2], &[Axis::X2], &[]),
            Err(DmcError::AxisOverlap(Axis::X2))
        ));
    }

    #[test]
    fn factorization_accepts_valid_joint() {
        let j = uniform_x2_joint();
        j.check_cognitive_factorization(1e-10).unwrap();
    }

    #[test]
    fn implied_channel_roundtrip() {
        let ch = identity_channel();
        let j = uniform_x2_joint();
        let back = j.implied_channel().unwrap();
        for (a, b) in ch.transition.iter().zip(back.transition.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
