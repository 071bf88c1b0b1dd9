//! Closed-form rate bounds for the Gaussian channel
//!
//! ```text
//!   Y = X1 + a·X2 + S + N1        (receiver 1)
//!   Z = b·X1 + X2 + c·S + N2     (receiver 2)
//! ```
//!
//! with unit noise variances, state S ~ N(0, Q) known noncausally at
//! transmitter 2, and average power constraints P1, P2. Channels split into
//! two cases by how the interference compares with the signal at receiver 1
//! (|a| > 1 vs |a| ≤ 1); each case has its own inner/outer bound family,
//! parameterized by the correlation pair (ρ21, ρ2s) and a power split
//! P2′ + P2″ of transmitter 2's uncorrelated power.
//!
//! All rates are in bits per channel use. Every closed form here is
//! cross-checked against the log-determinant evaluation in [`crate::oracle`].

mod bounds;
mod certify;
mod sweep;

pub use bounds::*;
pub use certify::*;
pub use sweep::*;

use crate::Real;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) fn half_log2_1p_f64(x: f64) -> f64 {
    crate::half_log2_1p(x)
}

/// Errors raised by the Gaussian bound evaluators and sweeps.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussError {
    /// A bound was requested for the wrong interference case in strict mode,
    /// or no capacity theorem covers the requested (case, condition) pair.
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    /// Split parameters violate their invariants for the requested mode.
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    /// A capacity formula needs a caller-asserted channel condition.
    #[error("capacity evaluation requires an asserted channel condition (7 or 8)")]
    MissingAssertion,
    /// A sweep found no feasible grid point.
    #[error("no feasible point in the swept region")]
    EmptyRegion,
}

/// Interference class at receiver 1. `a = ±1` lands in [`CaseTag::AtMostOne`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// |a| > 1: interference stronger than the direct signal at receiver 1.
    AboveOne,
    /// |a| ≤ 1.
    AtMostOne,
}

/// Transmit powers, state variance, and real channel gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianChannelParams<F> {
    /// Transmit power of transmitter 1 (energy per symbol).
    pub p1: F,
    /// Transmit power of transmitter 2.
    pub p2: F,
    /// State variance.
    pub q: F,
    /// Gain of X2 at receiver 1.
    pub a: F,
    /// Gain of X1 at receiver 2.
    pub b: F,
    /// Gain of S at receiver 2.
    pub c: F,
}

impl<F: Real> GaussianChannelParams<F> {
    pub fn new(p1: F, p2: F, q: F, a: F, b: F, c: F) -> Result<Self, GaussError> {
        let p = Self { p1, p2, q, a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GaussError> {
        let vals = [self.p1, self.p2, self.q, self.a, self.b, self.c];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(GaussError::InvalidSplit("non-finite channel parameter".into()));
        }
        if self.p1 < F::zero() || self.p2 < F::zero() || self.q < F::zero() {
            return Err(GaussError::InvalidSplit("negative power or state variance".into()));
        }
        Ok(())
    }
}

/// Which interference class a channel belongs to.
pub fn classify_case<F: Real>(params: &GaussianChannelParams<F>) -> CaseTag {
    if params.a.abs() > F::one() {
        CaseTag::AboveOne
    } else {
        CaseTag::AtMostOne
    }
}

/// How the power shares of a [`SplitParams`] relate to the correlation disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitMode {
    /// `p2_prime + p2_dprime = (1 − ρ21² − ρ2s²)·P2` exactly.
    Equality,
    /// A single free share `p2_prime ≤ (1 − ρ21² − ρ2s²)·P2`; `p2_dprime`
    /// unused (the outer bounds of Prop. 2 / Cor. 4 shape).
    Inequality,
}

/// Correlation coefficients and power split parameterizing every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitParams<F> {
    /// Correlation between X2 and X1.
    pub rho21: F,
    /// Correlation between X2 and S.
    pub rho2s: F,
    /// Power share P2′.
    pub p2_prime: F,
    /// Power share P2″.
    pub p2_dprime: F,
}

impl<F: Real> SplitParams<F> {
    /// Remaining uncorrelated power `(1 − ρ21² − ρ2s²)·P2`.
    pub fn residual_power(&self, p2: F) -> F {
        (F::one() - self.rho21 * self.rho21 - self.rho2s * self.rho2s) * p2
    }

    /// Equality-mode split with the full residual power on P2′.
    pub fn full_prime(rho21: F, rho2s: F, p2: F) -> Self {
        let mut sp = SplitParams { rho21, rho2s, p2_prime: F::zero(), p2_dprime: F::zero() };
        sp.p2_prime = sp.residual_power(p2).max(F::zero());
        sp
    }

    /// Equality-mode split: fraction `lambda` of the residual power on P2′.
    pub fn with_fraction(rho21: F, rho2s: F, lambda: F, p2: F) -> Self {
        let mut sp = SplitParams { rho21, rho2s, p2_prime: F::zero(), p2_dprime: F::zero() };
        let tot = sp.residual_power(p2).max(F::zero());
        sp.p2_prime = lambda * tot;
        sp.p2_dprime = tot - sp.p2_prime;
        sp
    }

    /// Inequality-mode split with a single free share.
    pub fn inequality(rho21: F, rho2s: F, share: F) -> Self {
        SplitParams { rho21, rho2s, p2_prime: share, p2_dprime: F::zero() }
    }

    pub fn validate(&self, p2: F, mode: SplitMode) -> Result<(), GaussError> {
        let one = F::one();
        let tol = F::of(1e-9);
        if self.rho21.abs() > one + tol || self.rho2s.abs() > one + tol {
            return Err(GaussError::InvalidSplit("|rho| > 1".into()));
        }
        let disk = self.rho21 * self.rho21 + self.rho2s * self.rho2s;
        if disk > one + tol {
            return Err(GaussError::InvalidSplit("rho21^2 + rho2s^2 > 1".into()));
        }
        if self.p2_prime < -tol || self.p2_dprime < -tol {
            return Err(GaussError::InvalidSplit("negative power share".into()));
        }
        let cap = self.residual_power(p2);
        match mode {
            SplitMode::Equality => {
                let sum = self.p2_prime + self.p2_dprime;
                if (sum - cap).abs() > tol * (one + p2) {
                    return Err(GaussError::InvalidSplit(
                        "P2' + P2'' != (1 - rho21^2 - rho2s^2) P2".into(),
                    ));
                }
            }
            SplitMode::Inequality => {
                if self.p2_prime > cap + tol * (one + p2) {
                    return Err(GaussError::InvalidSplit(
                        "P2' > (1 - rho21^2 - rho2s^2) P2".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A nonnegative achievable rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        RatePair { r1: r1.max(0.0), r2: r2.max(0.0) }
    }
}

/// Rate unit for reporting. Internal computations are always in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateUnit {
    Bits,
    Nats,
}

impl RateUnit {
    pub fn from_bits(&self, bits: f64) -> f64 {
        match self {
            RateUnit::Bits => bits,
            RateUnit::Nats => bits * std::f64::consts::LN_2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_classification() {
        let p = |a: f64| GaussianChannelParams::new(1.0, 1.0, 1.0, a, 1.6, 0.9).unwrap();
        assert_eq!(classify_case(&p(1.5)), CaseTag::AboveOne);
        assert_eq!(classify_case(&p(0.8)), CaseTag::AtMostOne);
        // a = 1 exactly belongs to the |a| <= 1 class.
        assert_eq!(classify_case(&p(1.0)), CaseTag::AtMostOne);
        assert_eq!(classify_case(&p(-1.0)), CaseTag::AtMostOne);
        assert_eq!(classify_case(&p(-1.2)), CaseTag::AboveOne);
    }

    #[test]
    fn split_validation() {
        let sp = SplitParams::full_prime(0.3f64, 0.4, 1.0);
        assert!(sp.validate(1.0, SplitMode::Equality).is_ok());
        assert!((sp.p2_prime - 0.75).abs() < 1e-12);

        let bad = SplitParams { rho21: 0.9f64, rho2s: 0.9, p2_prime: 0.0, p2_dprime: 0.0 };
        assert!(matches!(bad.validate(1.0, SplitMode::Equality), Err(GaussError::InvalidSplit(_))));

        let ineq = SplitParams::inequality(0.0f64, 0.0, 0.5);
        assert!(ineq.validate(1.0, SplitMode::Inequality).is_ok());
        let too_much = SplitParams::inequality(0.0f64, 0.0, 1.5);
        assert!(too_much.validate(1.0, SplitMode::Inequality).is_err());
    }
}
