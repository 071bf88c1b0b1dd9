//! Rate regions and capacity bounds for the state-dependent cognitive
//! interference channel: two transmitters jointly send a common message to two
//! receivers, transmitter 2 additionally sends its own message to receiver 2,
//! and an i.i.d. state sequence (known noncausally at transmitter 2, and
//! optionally at receiver 2) corrupts the channel.
//!
//! The crate has five subsystems:
//!
//! - [`gaussian`] — closed-form inner/outer bounds for the Gaussian channel,
//!   frontier sweeps, and boundary-point certification.
//! - [`oracle`] — an independent log-determinant evaluator for every Gaussian
//!   auxiliary-variable substitution, used to cross-check the closed forms.
//! - [`dmc`] — finite-alphabet channels with state: bound evaluation on
//!   explicit joint distributions, structural condition checks, and
//!   brute-force region optimization over quantized input laws.
//! - [`fm`] — exact-rational Fourier–Motzkin elimination over rate variables
//!   with symbolic mutual-information constants.
//! - [`gpsim`] — a desk-scale Monte-Carlo simulation of the layered
//!   superposition / rate-splitting / binning scheme on tiny channels.
//!
//! Scalar-generic core: the Gaussian closed forms and the covariance oracle
//! are generic over [`Real`] (any `num_traits::Float`); the type aliases below
//! fix the `f64` instantiations used by the sweeps and the CLI.

pub mod dmc;
pub mod fm;
pub mod gaussian;
pub mod gpsim;
pub mod oracle;

use num_traits::Float;

/// Scalar type for the closed-form and covariance math: `f32`, `f64`, or any
/// other `num_traits::Float`.
pub trait Real: Float + std::fmt::Debug + Send + Sync + 'static {
    /// Lossy conversion from `f64` (used for literal constants).
    fn of(x: f64) -> Self {
        Self::from(x).expect("constant representable in scalar type")
    }
    /// Lossy conversion to `f64` (used at reporting boundaries).
    fn to_f64(self) -> f64 {
        num_traits::NumCast::from(self).expect("scalar convertible to f64")
    }
}
impl<T: Float + std::fmt::Debug + Send + Sync + 'static> Real for T {}

/// `f64` channel parameters, the instantiation used by sweeps and the CLI.
pub type ChannelParams = gaussian::GaussianChannelParams<f64>;
/// `f64` split parameters.
pub type Split = gaussian::SplitParams<f64>;
/// `f64` covariance model.
pub type Model = oracle::CovarianceModel<f64>;

/// Half of log base 2 of `1 + x`: the ubiquitous Gaussian rate expression.
pub(crate) fn half_log2_1p<F: Real>(x: F) -> F {
    F::of(0.5) * (F::one() + x).log2()
}
