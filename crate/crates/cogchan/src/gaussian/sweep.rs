//! Grid sweeps over split parameters and Pareto frontier construction.
//!
//! A bound's achievable set is the union over all feasible [`SplitParams`] of
//! small polygons in the (R1, R2) plane. The sweep evaluates the bound on a
//! deterministic grid over the (ρ21, ρ2s) disk (by rejection) and the power
//! split, then traces the frontier by maximizing R1 at a ladder of R2 levels,
//! with coordinate-wise derivative-free refinement around each incumbent.
//! Cells are merged in index order, so results are independent of scheduling.

use super::{
    bound_uses_split, region_caps, BoundId, GaussError, GaussianChannelParams, RegionCaps,
    SplitParams,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sweep resolution and refinement controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Points per ρ axis over [−1, 1] (disk membership by rejection).
    pub rho_steps: usize,
    /// Points over the power-split fraction (and over P2′ in certification).
    pub split_steps: usize,
    /// R2 levels for frontier tracing.
    pub levels: usize,
    /// Rounds of coordinate-wise refinement around incumbents.
    pub refine_rounds: usize,
    /// Step shrink factor per refinement round.
    pub shrink: f64,
    /// Staircase dominance tolerance.
    pub dominance_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            rho_steps: 129,
            split_steps: 65,
            levels: 129,
            refine_rounds: 3,
            shrink: 0.25,
            dominance_tol: 1e-9,
        }
    }
}

impl GridSpec {
    /// A uniform coarse grid, handy for CLI smoke runs and tests.
    pub fn coarse(n: usize) -> Self {
        GridSpec {
            rho_steps: n.max(2),
            split_steps: (n / 2).max(2),
            levels: n.max(2),
            ..GridSpec::default()
        }
    }
}

fn linspace(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// One evaluated grid cell.
#[derive(Debug, Clone, Copy)]
pub struct SweepCell {
    pub sp: SplitParams<f64>,
    pub caps: RegionCaps,
}

/// Precomputed bound evaluations over the split grid for one channel.
pub struct BoundSurface {
    pub params: GaussianChannelParams<f64>,
    pub bound: BoundId,
    pub grid: GridSpec,
    pub cells: Vec<SweepCell>,
}

fn eval_sp(
    params: &GaussianChannelParams<f64>,
    bound: BoundId,
    rho21: f64,
    rho2s: f64,
    lambda: f64,
) -> Option<SweepCell> {
    if rho21 * rho21 + rho2s * rho2s > 1.0 {
        return None;
    }
    let sp = if bound_uses_split(bound) {
        SplitParams::with_fraction(rho21, rho2s, lambda, params.p2)
    } else {
        match bound {
            BoundId::Outer2 | BoundId::Outer1b => {
                let cap = SplitParams::full_prime(rho21, rho2s, params.p2).p2_prime;
                SplitParams::inequality(rho21, rho2s, cap)
            }
            _ => SplitParams::full_prime(rho21, rho2s, params.p2),
        }
    };
    region_caps(params, bound, &sp).ok().map(|caps| SweepCell { sp, caps })
}

impl BoundSurface {
    pub fn build(
        params: &GaussianChannelParams<f64>,
        bound: BoundId,
        grid: &GridSpec,
    ) -> BoundSurface {
        let rhos = linspace(grid.rho_steps, -1.0, 1.0);
        let lambdas = if bound_uses_split(bound) {
            linspace(grid.split_steps, 0.0, 1.0)
        } else {
            vec![1.0]
        };
        let cells: Vec<SweepCell> = rhos
            .par_iter()
            .flat_map_iter(|&r21| {
                let lambdas = lambdas.clone();
                let params = *params;
                rhos.iter()
                    .flat_map(move |&r2s| {
                        lambdas
                            .iter()
                            .filter_map(move |&lam| eval_sp(&params, bound, r21, r2s, lam))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        BoundSurface { params: *params, bound, grid: *grid, cells }
    }

    /// Max R1 achievable at the given R2 level over the grid, with local
    /// refinement around the best cell. Returns the achieving split.
    pub fn max_r1_at(&self, level: f64) -> Option<(f64, SplitParams<f64>)> {
        let mut best: Option<(f64, SplitParams<f64>)> = None;
        for cell in &self.cells {
            if let Some(r1) = cell.caps.max_r1_at(level) {
                if best.map_or(true, |(b, _)| r1 > b) {
                    best = Some((r1, cell.sp));
                }
            }
        }
        let (_, sp0) = best?;
        Some(self.refine(level, sp0))
    }

    /// Coordinate-wise derivative-free refinement of the level maximizer.
    fn refine(&self, level: f64, start: SplitParams<f64>) -> (f64, SplitParams<f64>) {
        let uses_split = bound_uses_split(self.bound);
        let tot0 = start.residual_power(self.params.p2).max(0.0);
        let mut coord = [
            start.rho21,
            start.rho2s,
            if uses_split && tot0 > 0.0 { start.p2_prime / tot0 } else { 1.0 },
        ];
        let eval = |c: &[f64; 3]| -> Option<(f64, SplitParams<f64>)> {
            let cell = eval_sp(&self.params, self.bound, c[0], c[1], c[2])?;
            cell.caps.max_r1_at(level).map(|r1| (r1, cell.sp))
        };
        let mut best = match eval(&coord) {
            Some(v) => v,
            None => return (0.0, start),
        };
        let mut step = [
            2.0 / (self.grid.rho_steps.max(2) - 1) as f64,
            2.0 / (self.grid.rho_steps.max(2) - 1) as f64,
            1.0 / (self.grid.split_steps.max(2) - 1) as f64,
        ];
        let ncoord = if uses_split { 3 } else { 2 };
        for _ in 0..self.grid.refine_rounds {
            for k in 0..ncoord {
                for dir in [-1.0, 1.0] {
                    let mut cand = coord;
                    cand[k] += dir * step[k];
                    cand[0] = cand[0].clamp(-1.0, 1.0);
                    cand[1] = cand[1].clamp(-1.0, 1.0);
                    cand[2] = cand[2].clamp(0.0, 1.0);
                    if let Some((r1, sp)) = eval(&cand) {
                        if r1 > best.0 {
                            best = (r1, sp);
                            coord = cand;
                        }
                    }
                }
            }
            for s in step.iter_mut() {
                *s *= self.grid.shrink;
            }
        }
        best
    }

    /// Largest R2 cap over the grid (the frontier's top level).
    pub fn r2_max(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.caps.r2_cap.min(c.caps.sum_cap))
            .fold(0.0, f64::max)
    }
}

/// One frontier point with its provenance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub r1: f64,
    pub r2: f64,
    pub split: SplitParams<f64>,
    pub bound: BoundId,
    pub certified: bool,
}

/// A Pareto-pruned rate frontier: points sorted by R1 ascending, none
/// dominated by another.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateFrontier {
    pub params: GaussianChannelParams<f64>,
    pub bound: BoundId,
    pub grid: GridSpec,
    pub points: Vec<FrontierPoint>,
}

impl RateFrontier {
    /// Staircase dominance: is `(r1, r2)` dominated by some frontier point
    /// within `tol`?
    pub fn dominates(&self, r1: f64, r2: f64, tol: f64) -> bool {
        self.points.iter().any(|p| p.r1 >= r1 - tol && p.r2 >= r2 - tol)
    }

    /// Max frontier R1 at R2 levels at or above `r2` (staircase query).
    pub fn r1_at(&self, r2: f64, tol: f64) -> Option<f64> {
        self.points
            .iter()
            .filter(|p| p.r2 >= r2 - tol)
            .map(|p| p.r1)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }
}

/// Remove dominated points and sort by R1 ascending.
pub fn pareto_prune(mut pts: Vec<FrontierPoint>) -> Vec<FrontierPoint> {
    pts.sort_by(|x, y| {
        x.r1.partial_cmp(&y.r1)
            .unwrap()
            .then(x.r2.partial_cmp(&y.r2).unwrap())
    });
    let mut keep: Vec<FrontierPoint> = Vec::with_capacity(pts.len());
    // Scan from the largest R1 down; keep points whose R2 exceeds every R2
    // seen so far (strictly), which is exactly Pareto maximality here.
    let mut best_r2 = f64::NEG_INFINITY;
    for p in pts.iter().rev() {
        if p.r2 > best_r2 {
            keep.push(*p);
            best_r2 = p.r2;
        }
    }
    keep.reverse();
    keep
}

/// Sweep a bound and trace its Pareto frontier.
pub fn frontier(
    params: &GaussianChannelParams<f64>,
    bound: BoundId,
    grid: &GridSpec,
) -> Result<RateFrontier, GaussError> {
    params.validate()?;
    if grid.rho_steps < 2 || grid.levels < 2 {
        return Err(GaussError::InvalidSplit("grid resolution must be >= 2 per axis".into()));
    }
    let surface = BoundSurface::build(params, bound, grid);
    let top = surface.r2_max();
    let levels = linspace(grid.levels, 0.0, top);
    let pts: Vec<Option<FrontierPoint>> = levels
        .par_iter()
        .map(|&r2| {
            surface.max_r1_at(r2).map(|(r1, sp)| FrontierPoint {
                r1,
                r2,
                split: sp,
                bound,
                certified: false,
            })
        })
        .collect();
    let pts: Vec<FrontierPoint> = pts.into_iter().flatten().collect();
    if pts.is_empty() {
        return Err(GaussError::EmptyRegion);
    }
    Ok(RateFrontier { params: *params, bound, grid: *grid, points: pareto_prune(pts) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frontier_zero_power_is_segment() {
        let p = GaussianChannelParams::<f64>::new(1.5, 0.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let f = frontier(&p, BoundId::Outer2, &GridSpec::coarse(17)).unwrap();
        let single = 0.5 * (1.0 + p.b * p.b * p.p1 / (p.c * p.c * p.q + 1.0)).log2();
        assert_eq!(f.points.len(), 1);
        assert!((f.points[0].r1 - single).abs() < 1e-9);
        assert!(f.points[0].r2.abs() < 1e-12);
    }

    #[test]
    fn frontier_sorted_and_pareto() {
        let p = GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let f = frontier(&p, BoundId::Inner2, &GridSpec::coarse(21)).unwrap();
        for w in f.points.windows(2) {
            assert!(w[0].r1 <= w[1].r1);
            assert!(w[0].r2 > w[1].r2, "no point may dominate another");
        }
    }

    #[test]
    fn frontier_deterministic() {
        let p = GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 0.8, 0.85, 0.9).unwrap();
        let g = GridSpec::coarse(15);
        let f1 = frontier(&p, BoundId::Inner1a, &g).unwrap();
        let f2 = frontier(&p, BoundId::Inner1a, &g).unwrap();
        assert_eq!(f1.points.len(), f2.points.len());
        for (a, b) in f1.points.iter().zip(f2.points.iter()) {
            assert_eq!(a.r1.to_bits(), b.r1.to_bits());
            assert_eq!(a.r2.to_bits(), b.r2.to_bits());
        }
    }

    #[test]
    fn frontier_monotone_in_power() {
        // Setwise monotonicity: growing p1 or p2 never shrinks the frontier.
        let g = GridSpec::coarse(13);
        let base = GaussianChannelParams::<f64>::new(1.0, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let more1 = GaussianChannelParams::<f64>::new(1.5, 1.0, 1.0, 1.5, 1.6, 0.9).unwrap();
        let more2 = GaussianChannelParams::<f64>::new(1.0, 1.5, 1.0, 1.5, 1.6, 0.9).unwrap();
        let f0 = frontier(&base, BoundId::Inner2, &g).unwrap();
        for bigger in [more1, more2] {
            let f1 = frontier(&bigger, BoundId::Inner2, &g).unwrap();
            for p in &f0.points {
                assert!(
                    f1.dominates(p.r1, p.r2, 1e-6),
                    "point ({}, {}) lost when power grew",
                    p.r1,
                    p.r2
                );
            }
        }
    }
}
