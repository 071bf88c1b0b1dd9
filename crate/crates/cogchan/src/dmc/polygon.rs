//! Exact-rational (R1, R2) polygons.
//!
//! Every theorem's rate region at a fixed joint is an intersection of at most
//! six halfplanes `a1·R1 + a2·R2 ≤ b` with small integer coefficients, plus
//! nonnegativity. Containment tests enumerate vertices by pairwise
//! intersection in exact rational arithmetic on bound values quantized at
//! 1e-12, which keeps the checks free of floating-point flakiness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

/// Quantize a float at 1e-12 into an exact rational.
pub fn quantize(v: f64) -> BigRational {
    let scaled = (v * 1e12).round();
    BigRational::new(
        BigInt::from_f64(scaled).unwrap_or_else(BigInt::zero),
        BigInt::from(1_000_000_000_000i64),
    )
}

/// One halfplane `a1·R1 + a2·R2 ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlane {
    pub a1: i64,
    pub a2: i64,
    pub b: BigRational,
}

impl HalfPlane {
    pub fn new(a1: i64, a2: i64, b: f64) -> Self {
        HalfPlane { a1, a2, b: quantize(b) }
    }

    fn slack(&self, r1: &BigRational, r2: &BigRational) -> BigRational {
        &self.b - (BigRational::from(BigInt::from(self.a1)) * r1
            + BigRational::from(BigInt::from(self.a2)) * r2)
    }
}

/// An intersection of halfplanes with nonnegativity, represented by its
/// constraint list and (lazily) its exact vertex set.
#[derive(Debug, Clone)]
pub struct RatePolygon {
    pub constraints: Vec<HalfPlane>,
}

impl RatePolygon {
    /// Build from `(a1, a2, bound)` rows; nonnegativity is implicit.
    pub fn from_bounds(rows: &[(i64, i64, f64)]) -> RatePolygon {
        let mut constraints: Vec<HalfPlane> =
            rows.iter().map(|&(a1, a2, b)| HalfPlane::new(a1, a2, b)).collect();
        constraints.push(HalfPlane { a1: -1, a2: 0, b: BigRational::zero() });
        constraints.push(HalfPlane { a1: 0, a2: -1, b: BigRational::zero() });
        RatePolygon { constraints }
    }

    fn feasible(&self, r1: &BigRational, r2: &BigRational, slack: &BigRational) -> bool {
        self.constraints.iter().all(|c| c.slack(r1, r2) >= -slack.clone())
    }

    /// Exact vertex enumeration: all feasible pairwise intersections.
    pub fn vertices(&self) -> Vec<(BigRational, BigRational)> {
        let n = self.constraints.len();
        let zero = BigRational::zero();
        let mut out: Vec<(BigRational, BigRational)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (ci, cj) = (&self.constraints[i], &self.constraints[j]);
                let det = ci.a1 * cj.a2 - ci.a2 * cj.a1;
                if det == 0 {
                    continue;
                }
                let det = BigRational::from(BigInt::from(det));
                let r1 = (&ci.b * BigRational::from(BigInt::from(cj.a2))
                    - &cj.b * BigRational::from(BigInt::from(ci.a2)))
                    / det.clone();
                let r2 = (BigRational::from(BigInt::from(ci.a1)) * &cj.b
                    - BigRational::from(BigInt::from(cj.a1)) * &ci.b)
                    / det;
                if self.feasible(&r1, &r2, &zero) && !out.iter().any(|(a, b)| *a == r1 && *b == r2)
                {
                    out.push((r1, r2));
                }
            }
        }
        out
    }

    /// True when the polygon has no feasible point (not even the origin).
    pub fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    /// Worst slack of this polygon's vertices against `outer`'s constraints:
    /// nonnegative means containment. An empty polygon is vacuously
    /// contained (`+∞` margin is reported as `f64::INFINITY`).
    pub fn containment_margin(&self, outer: &RatePolygon) -> f64 {
        let vs = self.vertices();
        if vs.is_empty() {
            return f64::INFINITY;
        }
        let mut worst: Option<BigRational> = None;
        for (r1, r2) in &vs {
            for c in &outer.constraints {
                let s = c.slack(r1, r2);
                if worst.as_ref().map_or(true, |w| s < *w) {
                    worst = Some(s);
                }
            }
        }
        worst.and_then(|w| w.to_f64()).unwrap_or(f64::INFINITY)
    }

    /// Maximum of `w1·R1 + w2·R2` over the polygon (at a vertex).
    pub fn maximize(&self, w1: f64, w2: f64) -> Option<f64> {
        let vs = self.vertices();
        vs.iter()
            .map(|(r1, r2)| w1 * r1.to_f64().unwrap() + w2 * r2.to_f64().unwrap())
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
    }
}

/// Float maximum of `w1·R1 + w2·R2` over `{rows} ∩ R²≥0`, for hot loops
/// where exact arithmetic is not needed (region optimization scoring).
/// Returns `None` when the region is empty.
pub fn polygon_max_f64(rows: &[(f64, f64, f64)], w1: f64, w2: f64) -> Option<f64> {
    let mut cons: Vec<(f64, f64, f64)> = rows.to_vec();
    cons.push((-1.0, 0.0, 0.0));
    cons.push((0.0, -1.0, 0.0));
    let feasible = |r1: f64, r2: f64| cons.iter().all(|&(a1, a2, b)| a1 * r1 + a2 * r2 <= b + 1e-12);
    let mut best: Option<f64> = None;
    for i in 0..cons.len() {
        for j in (i + 1)..cons.len() {
            let (a1, a2, b1) = cons[i];
            let (c1, c2, b2) = cons[j];
            let det = a1 * c2 - a2 * c1;
            if det.abs() < 1e-14 {
                continue;
            }
            let r1 = (b1 * c2 - b2 * a2) / det;
            let r2 = (a1 * b2 - c1 * b1) / det;
            if feasible(r1, r2) {
                let v = w1 * r1 + w2 * r2;
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_max_agrees_with_exact() {
        let rows = [(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (1.0, 1.0, 1.5)];
        let p = RatePolygon::from_bounds(&[(1, 0, 1.0), (0, 1, 1.0), (1, 1, 1.5)]);
        let exact = p.maximize(2.0, 1.0).unwrap();
        let fast = polygon_max_f64(&rows, 2.0, 1.0).unwrap();
        assert!((exact - fast).abs() < 1e-12);
    }

    #[test]
    fn triangle_vertices() {
        // R1 <= 1, R2 <= 1, R1 + R2 <= 1.5
        let p = RatePolygon::from_bounds(&[(1, 0, 1.0), (0, 1, 1.0), (1, 1, 1.5)]);
        let vs = p.vertices();
        assert_eq!(vs.len(), 5);
        assert!((p.maximize(1.0, 1.0).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn containment() {
        let inner = RatePolygon::from_bounds(&[(1, 0, 0.5), (0, 1, 0.5)]);
        let outer = RatePolygon::from_bounds(&[(1, 0, 1.0), (0, 1, 1.0)]);
        assert!(inner.containment_margin(&outer) >= 0.0);
        assert!(outer.containment_margin(&inner) < -0.4);
    }

    #[test]
    fn empty_polygon_vacuous() {
        let p = RatePolygon::from_bounds(&[(1, 0, -0.5)]);
        assert!(p.is_empty());
        let q = RatePolygon::from_bounds(&[(1, 0, 1.0)]);
        assert_eq!(p.containment_margin(&q), f64::INFINITY);
    }

    #[test]
    fn quantization_is_exact() {
        let b = quantize(0.3333333333333333);
        let c = quantize(0.3333333333333333);
        assert_eq!(b, c);
    }
}
