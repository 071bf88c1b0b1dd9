//! Independent ground truth for the Gaussian closed forms.
//!
//! Each auxiliary-variable substitution induces a jointly Gaussian law over
//! the base variables (X1, X2′, X2″, S, N1, N2) and derived linear
//! combinations (X2, T, U, V, Y, Z). This module builds that covariance model
//! and evaluates conditional mutual informations by log-determinants, so that
//! every closed-form bound can be checked against the mutual-information
//! expression it claims to equal — two routes through entirely different
//! arithmetic.
//!
//! Conditional covariances get a ridge of 1e-12 before the determinants, so
//! exact linear dependences (deterministic derived variables) stay finite
//! without moving any value by more than ~1e-10 bits.

use crate::gaussian::{GaussianChannelParams, SplitParams};
use crate::Real;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    /// q = 0 with ρ2s ≠ 0: the substitution correlates X2 with a zero-variance
    /// state, which has no limit model.
    #[error("degenerate state: q = 0 requires rho2s = 0")]
    DegenerateState,
    /// p1 = 0 with ρ21 ≠ 0, the analogous degeneracy at transmitter 1.
    #[error("degenerate input: p1 = 0 requires rho21 = 0")]
    DegenerateInput,
    /// A conditional covariance stayed singular even after the ridge.
    #[error("singular covariance in mutual-information evaluation")]
    SingularCovariance,
    /// An expression referenced a variable the model does not define.
    #[error("unknown variable {0:?}")]
    UnknownVariable(Var),
}

/// Variables of the covariance model. The first six are the independent
/// bases; the rest are linear combinations defined by the chosen scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X1,
    X2Prime,
    X2DPrime,
    S,
    N1,
    N2,
    X2,
    T,
    U,
    V,
    Y,
    Z,
}

pub const BASE_VARS: [Var; 6] = [Var::X1, Var::X2Prime, Var::X2DPrime, Var::S, Var::N1, Var::N2];

/// Which auxiliary-variable substitution to build.
///
/// `Thm12` shares Prop. 4's substitution (the same T, V pair); it is kept as
/// its own identifier because the bounds read different expressions off it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemeId {
    Prop1,
    Prop3,
    Prop4,
    Thm12,
    Thm14,
    Thm15,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::Prop1,
        SchemeId::Prop3,
        SchemeId::Prop4,
        SchemeId::Thm12,
        SchemeId::Thm14,
        SchemeId::Thm15,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::Prop1 => "prop1",
            SchemeId::Prop3 => "prop3",
            SchemeId::Prop4 => "prop4",
            SchemeId::Thm12 => "thm12",
            SchemeId::Thm14 => "thm14",
            SchemeId::Thm15 => "thm15",
        }
    }
}

/// A substitution instance: scheme plus channel and split parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeSpec<F> {
    pub id: SchemeId,
    pub params: GaussianChannelParams<F>,
    pub split: SplitParams<F>,
}

/// Joint Gaussian law over base and derived variables, stored as coefficient
/// rows over the independent bases plus the base variances.
#[derive(Debug, Clone)]
pub struct CovarianceModel<F> {
    base_var: [F; 6],
    rows: Vec<(Var, [F; 6])>,
}

fn row<F: Real>() -> [F; 6] {
    [F::zero(); 6]
}

impl<F: Real> CovarianceModel<F> {
    fn push(&mut self, v: Var, r: [F; 6]) {
        self.rows.push((v, r));
    }

    pub fn coeffs(&self, v: Var) -> Option<&[F; 6]> {
        self.rows.iter().find(|(name, _)| *name == v).map(|(_, r)| r)
    }

    /// Variance of a single variable under the model.
    pub fn variance(&self, v: Var) -> Option<F> {
        let r = self.coeffs(v)?;
        Some((0..6).map(|i| r[i] * r[i] * self.base_var[i]).fold(F::zero(), |a, b| a + b))
    }

    fn cov_entry(&self, a: &[F; 6], b: &[F; 6]) -> F {
        (0..6).map(|i| a[i] * b[i] * self.base_var[i]).fold(F::zero(), |a, b| a + b)
    }

    fn cov_matrix(&self, vars: &[Var]) -> Result<Vec<Vec<F>>, OracleError> {
        let rows: Result<Vec<&[F; 6]>, _> = vars
            .iter()
            .map(|v| self.coeffs(*v).ok_or(OracleError::UnknownVariable(*v)))
            .collect();
        let rows = rows?;
        let n = rows.len();
        let mut m = vec![vec![F::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.cov_entry(rows[i], rows[j]);
            }
        }
        Ok(m)
    }
}

/// Build the covariance model for a substitution.
///
/// Every scheme shares `X2 = ρ21√(P2/P1)·X1 + X2′ + X2″ + ρ2s√(P2/Q)·S` and
/// the channel rows for Y and Z; only the auxiliary rows differ. Degenerate
/// q = 0 (or p1 = 0) is handled by the limit model, which requires the
/// corresponding correlation to vanish.
pub fn build_model<F: Real>(spec: &SchemeSpec<F>) -> Result<CovarianceModel<F>, OracleError> {
    let p = &spec.params;
    let sp = &spec.split;
    let zero = F::zero();
    let one = F::one();
    if p.q == zero && sp.rho2s != zero {
        return Err(OracleError::DegenerateState);
    }
    if p.p1 == zero && sp.rho21 != zero {
        return Err(OracleError::DegenerateInput);
    }
    let (p2p, p2pp) = (sp.p2_prime.max(zero), sp.p2_dprime.max(zero));
    let mut m = CovarianceModel {
        base_var: [p.p1, p2p, p2pp, p.q, one, one],
        rows: Vec::with_capacity(12),
    };
    for (i, v) in BASE_VARS.iter().enumerate() {
        let mut r = row();
        r[i] = one;
        m.push(*v, r);
    }
    let k1 = if p.p1 > zero { sp.rho21 * (p.p2 / p.p1).sqrt() } else { zero };
    let ks = if p.q > zero { sp.rho2s * (p.p2 / p.q).sqrt() } else { zero };
    let mut x2 = row();
    x2[0] = k1;
    x2[1] = one;
    x2[2] = one;
    x2[3] = ks;
    m.push(Var::X2, x2);

    let mut y = row();
    for i in 0..6 {
        y[i] = p.a * x2[i];
    }
    y[0] = y[0] + one;
    y[3] = y[3] + one;
    y[4] = one;
    m.push(Var::Y, y);

    let mut z = row();
    for i in 0..6 {
        z[i] = x2[i];
    }
    z[0] = z[0] + p.b;
    z[3] = z[3] + p.c;
    z[5] = one;
    m.push(Var::Z, z);

    // Auxiliary layers. Each is X2' (or X2'') plus a scaled copy of the state;
    // the scalings are the dirty-paper-optimal ones for the receiver the layer
    // targets, which is what the closed forms evaluate to.
    let a2 = p.a * p.a;
    match spec.id {
        SchemeId::Prop1 => {
            // Single layer against the state seen at Z.
            let alpha = p2p / (p2p + one);
            let mut u = row();
            u[1] = one;
            u[3] = alpha * (p.c + ks);
            m.push(Var::U, u);
        }
        SchemeId::Prop3 => {
            // T against the state at Y (noise a²P2''+1), V against the
            // residual state at Z after T is known.
            let alpha = a2 * p2p / (a2 * (p2p + p2pp) + one);
            let beta = p2pp / (p2pp + one);
            let t_coef = if p.a == zero { zero } else { (alpha / p.a) * (one + p.a * ks) };
            let mut t = row();
            t[1] = one;
            t[3] = t_coef;
            m.push(Var::T, t);
            let mut v = row();
            v[2] = one;
            v[3] = beta * (p.c + ks - t_coef);
            m.push(Var::V, v);
        }
        SchemeId::Prop4 | SchemeId::Thm12 => {
            // Both layers against the state at Z, successively.
            let alpha = p2p / (p2p + p2pp + one);
            let beta = p2pp / (p2pp + one);
            let mut t = row();
            t[1] = one;
            t[3] = alpha * (p.c + ks);
            m.push(Var::T, t);
            let mut v = row();
            v[2] = one;
            v[3] = beta * (one - alpha) * (p.c + ks);
            m.push(Var::V, v);
        }
        SchemeId::Thm14 => {
            let alpha = a2 * p2p / (a2 * (p2p + p2pp) + one);
            let coef = if p.a == zero { zero } else { (alpha / p.a) * (one + p.a * ks) };
            let mut u = row();
            u[1] = one;
            u[3] = coef;
            m.push(Var::U, u);
        }
        SchemeId::Thm15 => {
            let alpha = a2 * p2p / (a2 * p2p + one);
            let coef = if p.a == zero { zero } else { (alpha / p.a) * (one + p.a * ks) };
            let mut u = row();
            u[1] = one;
            u[3] = coef;
            m.push(Var::U, u);
        }
    }
    Ok(m)
}

const RIDGE: f64 = 1e-12;

/// log-determinant via elimination without pivoting; the inputs are
/// ridge-regularized covariance blocks, hence symmetric positive definite,
/// where every pivot stays positive.
fn log_det<F: Real>(mut m: Vec<Vec<F>>) -> Result<F, OracleError> {
    let n = m.len();
    if n == 0 {
        return Ok(F::zero());
    }
    let mut acc = F::zero();
    for k in 0..n {
        let d = m[k][k];
        if d <= F::zero() || !d.is_finite() {
            return Err(OracleError::SingularCovariance);
        }
        acc = acc + d.ln();
        for i in (k + 1)..n {
            let f = m[i][k] / d;
            for j in k..n {
                let sub = f * m[k][j];
                m[i][j] = m[i][j] - sub;
            }
        }
    }
    Ok(acc)
}

fn add_ridge<F: Real>(m: &mut [Vec<F>]) {
    let eps = F::of(RIDGE);
    for (i, r) in m.iter_mut().enumerate() {
        r[i] = r[i] + eps;
    }
}

impl<F: Real> CovarianceModel<F> {
    /// Conditional covariance of `vars` given `cond` by Schur complement,
    /// with the ridge applied to the conditioning block.
    fn cond_cov(&self, vars: &[Var], cond: &[Var]) -> Result<Vec<Vec<F>>, OracleError> {
        let mut s_vv = self.cov_matrix(vars)?;
        if cond.is_empty() {
            return Ok(s_vv);
        }
        let mut s_cc = self.cov_matrix(cond)?;
        add_ridge(&mut s_cc);
        let all: Vec<Var> = vars.iter().chain(cond.iter()).cloned().collect();
        let joint = self.cov_matrix(&all)?;
        let (nv, nc) = (vars.len(), cond.len());
        // s_vc: nv x nc block of the joint matrix.
        let s_vc: Vec<Vec<F>> =
            (0..nv).map(|i| (0..nc).map(|j| joint[i][nv + j].clone()).collect()).collect();
        let inv = invert(s_cc)?;
        for i in 0..nv {
            for j in 0..nv {
                let mut acc = F::zero();
                for k in 0..nc {
                    for l in 0..nc {
                        acc = acc + s_vc[i][k] * inv[k][l] * s_vc[j][l];
                    }
                }
                s_vv[i][j] = s_vv[i][j] - acc;
            }
        }
        Ok(s_vv)
    }
}

fn invert<F: Real>(mut m: Vec<Vec<F>>) -> Result<Vec<Vec<F>>, OracleError> {
    let n = m.len();
    let mut inv = vec![vec![F::zero(); n]; n];
    for (i, r) in inv.iter_mut().enumerate() {
        r[i] = F::one();
    }
    for k in 0..n {
        let d = m[k][k];
        if d == F::zero() || !d.is_finite() {
            return Err(OracleError::SingularCovariance);
        }
        for j in 0..n {
            m[k][j] = m[k][j] / d;
            inv[k][j] = inv[k][j] / d;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k];
            for j in 0..n {
                let ms = f * m[k][j];
                let is = f * inv[k][j];
                m[i][j] = m[i][j] - ms;
                inv[i][j] = inv[i][j] - is;
            }
        }
    }
    Ok(inv)
}

/// Conditional mutual information I(A; B | C) in bits.
///
/// Computed from the joint conditional covariance of A ∪ B given C, taking
/// the block determinants from the same matrix so that degenerate directions
/// cancel exactly:
/// `I = ½ [ log det(M_AA) + log det(M_BB) − log det(M) ] / ln 2`.
pub fn gaussian_mi<F: Real>(
    model: &CovarianceModel<F>,
    a: &[Var],
    b: &[Var],
    c: &[Var],
) -> Result<F, OracleError> {
    let ab: Vec<Var> = a.iter().chain(b.iter()).cloned().collect();
    let m = model.cond_cov(&ab, c)?;
    let (na, nb) = (a.len(), b.len());
    let eps = F::of(RIDGE);
    let mut maa = vec![vec![F::zero(); na]; na];
    for i in 0..na {
        for j in 0..na {
            maa[i][j] = m[i][j];
        }
        maa[i][i] = maa[i][i] + eps;
    }
    let mut mbb = vec![vec![F::zero(); nb]; nb];
    for i in 0..nb {
        for j in 0..nb {
            mbb[i][j] = m[na + i][na + j];
        }
        mbb[i][i] = mbb[i][i] + eps;
    }
    let mut mab = m;
    add_ridge(&mut mab);
    let ln2 = F::of(std::f64::consts::LN_2);
    let half = F::of(0.5);
    Ok(half * (log_det(maa)? + log_det(mbb)? - log_det(mab)?) / ln2)
}

/// A signed sum of conditional mutual-information atoms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiExpression {
    pub terms: Vec<MiTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiTerm {
    pub sign: f64,
    pub a: Vec<Var>,
    pub b: Vec<Var>,
    pub c: Vec<Var>,
}

impl MiExpression {
    pub fn new() -> Self {
        MiExpression { terms: Vec::new() }
    }

    pub fn plus(mut self, a: &[Var], b: &[Var], c: &[Var]) -> Self {
        self.terms.push(MiTerm { sign: 1.0, a: a.to_vec(), b: b.to_vec(), c: c.to_vec() });
        self
    }

    pub fn minus(mut self, a: &[Var], b: &[Var], c: &[Var]) -> Self {
        self.terms.push(MiTerm { sign: -1.0, a: a.to_vec(), b: b.to_vec(), c: c.to_vec() });
        self
    }
}

impl Default for MiExpression {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluate a signed sum of conditional MI atoms on a model, in bits.
pub fn eval_expression<F: Real>(
    model: &CovarianceModel<F>,
    expr: &MiExpression,
) -> Result<F, OracleError> {
    let mut acc = F::zero();
    for t in &expr.terms {
        let v = gaussian_mi(model, &t.a, &t.b, &t.c)?;
        acc = acc + F::of(t.sign) * v;
    }
    Ok(acc)
}

mod crosscheck;
pub use crosscheck::{crosscheck, scheme_expressions};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::SplitParams;
    use Var::*;

    fn spec(id: SchemeId) -> SchemeSpec<f64> {
        SchemeSpec {
            id,
            params: GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap(),
            split: SplitParams::full_prime(0.0, 0.0, 1.0),
        }
    }

    #[test]
    fn identity_channel_half_bit() {
        // I(X; X + N) with unit powers: exactly half a bit.
        let m = build_model(&spec(SchemeId::Prop1)).unwrap();
        // U at rho=0 is X2' + alpha*c*S; use X2' and Z directly instead:
        // I(X2'; X2' + ...) is not 1/2, so build the textbook case from bases.
        let mi = gaussian_mi(&m, &[X2Prime], &[X2Prime], &[]).unwrap();
        assert!(mi > 15.0, "self-information is large but finite under ridge");
        let v = gaussian_mi(&m, &[X1], &[Y], &[X2, S]).unwrap();
        // Given X2 and S, Y = X1 + N1: a unit-power channel with unit noise.
        assert!((v - 0.5).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn independent_bases_zero_mi() {
        let m = build_model(&spec(SchemeId::Prop1)).unwrap();
        let v = gaussian_mi(&m, &[X1], &[S], &[]).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn prop1_dirty_paper_identity() {
        // I(U;Z|X1) - I(U;S|X1) = 1/2 log2(1 + P2') at rho = 0.
        let m = build_model(&spec(SchemeId::Prop1)).unwrap();
        let v = gaussian_mi(&m, &[U], &[Z], &[X1]).unwrap()
            - gaussian_mi(&m, &[U], &[S], &[X1]).unwrap();
        assert!((v - 0.5).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn prop1_aux_variance() {
        // Var(U) = P2' + alpha^2 c^2 Q with alpha = P2'/(P2'+1).
        let m = build_model(&spec(SchemeId::Prop1)).unwrap();
        let var_u = m.variance(Var::U).unwrap();
        assert!((var_u - 1.2025).abs() < 1e-12);
    }

    #[test]
    fn power_constraint_identity() {
        // Var(X2) = P2 in equality mode, for every scheme.
        for id in SchemeId::ALL {
            let mut s = spec(id);
            s.split = SplitParams::with_fraction(0.3, -0.2, 0.4, s.params.p2);
            if matches!(id, SchemeId::Prop1 | SchemeId::Thm15) {
                s.split = SplitParams::full_prime(0.3, -0.2, s.params.p2);
            }
            let m = build_model(&s).unwrap();
            let v = m.variance(Var::X2).unwrap();
            assert!((v - s.params.p2).abs() < 1e-12, "{id:?}: Var(X2) = {v}");
        }
    }

    #[test]
    fn degenerate_state_rejected() {
        let mut s = spec(SchemeId::Prop1);
        s.params.q = 0.0;
        s.split.rho2s = 0.3;
        s.split.p2_prime = s.split.residual_power(1.0);
        assert!(matches!(build_model(&s), Err(OracleError::DegenerateState)));
        s.split = SplitParams::full_prime(0.3, 0.0, 1.0);
        assert!(build_model(&s).is_ok());
    }

    #[test]
    fn chain_rule_and_symmetry() {
        let m = build_model(&spec(SchemeId::Prop3)).unwrap();
        let lhs = gaussian_mi(&m, &[T, V], &[Z], &[X1]).unwrap();
        let rhs = gaussian_mi(&m, &[T], &[Z], &[X1]).unwrap()
            + gaussian_mi(&m, &[V], &[Z], &[X1, T]).unwrap();
        assert!((lhs - rhs).abs() < 1e-9, "chain rule: {lhs} vs {rhs}");
        let ab = gaussian_mi(&m, &[T, V], &[Y, Z], &[X1]).unwrap();
        let ba = gaussian_mi(&m, &[Y, Z], &[T, V], &[X1]).unwrap();
        assert!((ab - ba).abs() < 1e-9, "symmetry");
    }

    #[test]
    fn zero_expression() {
        let m = build_model(&spec(SchemeId::Prop1)).unwrap();
        let e = MiExpression::new().plus(&[U], &[Z], &[X1]).minus(&[U], &[Z], &[X1]);
        assert!(eval_expression(&m, &e).unwrap().abs() < 1e-12);
    }
}
