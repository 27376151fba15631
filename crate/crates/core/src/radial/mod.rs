//! Ground state of the s-wave radial operator `−u'' + W(r)u = εu` on
//! `(0, ∞)` with `u(0) = 0`, for bounded `W` vanishing at infinity.
//!
//! [`ground_state`] is the production path: Numerov matching with a
//! Rayleigh-quotient correction, an exact exponential tail past `r_max`,
//! two grid levels and Richardson extrapolation. [`ground_state_oracle`] is an independent check that
//! bisects the Sturm count of the finite-difference matrix.

mod numerov;
mod sturm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialShape;

pub(crate) use numerov::simpson;

/// Wide shallow-state domains coarsen the step rather than exceed 2^16
/// fine-grid intervals.
const MAX_COARSE_INTERVALS: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialOptions {
    /// Fixed truncation radius; `None` picks `max(40, 15/√max(|ε|, 1e-4))`.
    pub r_max: Option<f64>,
    /// Minimum number of intervals on the coarse grid (power of two).
    pub grid_points: usize,
    /// Target coarse-grid step; the interval count is the smallest power
    /// of two reaching it.
    pub step: f64,
    pub tolerance: f64,
    /// A bound state exists iff `ε < −existence_threshold`.
    pub existence_threshold: f64,
    /// Maximum number of ×1.5 domain enlargements.
    pub max_refinements: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self {
            r_max: None,
            grid_points: 1 << 10,
            step: 0.02,
            tolerance: 1e-9,
            existence_threshold: 1e-9,
            max_refinements: 8,
        }
    }
}

impl RadialOptions {
    fn validate(&self) -> Result<()> {
        if let Some(r) = self.r_max {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!("r_max must be positive, got {r}")));
            }
        }
        if self.grid_points < 1 << 10 || !self.grid_points.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "grid_points must be a power of two >= 1024, got {}",
                self.grid_points
            )));
        }
        if !(self.step > 0.0) || !(self.tolerance > 0.0) || !(self.existence_threshold > 0.0) {
            return Err(Error::InvalidParameter(
                "step, tolerance and existence_threshold must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Coarse interval count for `[0, r_max]`; the fine level doubles it.
    fn intervals_for(&self, r_max: f64) -> usize {
        let want = (r_max / self.step).ceil() as usize;
        want.next_power_of_two()
            .clamp(self.grid_points, MAX_COARSE_INTERVALS.max(self.grid_points))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSolution {
    pub epsilon: f64,
    pub grid: Vec<f64>,
    /// Positive near the origin, normalised over `(0, ∞)` with the
    /// exponential tail beyond `r_max` included.
    pub u: Vec<f64>,
    pub converged: bool,
    /// `|ε_fine − ε_coarse|` between the two grid levels.
    pub richardson_gap: f64,
    pub r_max: f64,
}

impl RadialSolution {
    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    pub fn norm(&self) -> f64 {
        simpson(&self.u.iter().map(|v| v * v).collect::<Vec<_>>(), self.step())
    }

    pub fn interior_nodes(&self) -> usize {
        let n = self.u.len();
        self.u[1..n - 1]
            .windows(2)
            .filter(|p| p[0] != 0.0 && p[1].signum() != p[0].signum())
            .count()
    }
}

/// Outer edge of the region where `|W|` exceeds `1e-15·max|W|`.
pub(crate) fn potential_range<W: Fn(f64) -> f64>(w: &W) -> f64 {
    let peak = (0..=240).map(|i| w(0.25 * i as f64).abs()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let cutoff = 1e-15 * peak;
    let mut last = 0.0;
    for i in 0..=4000 {
        let r = 0.5 * i as f64;
        if w(r).abs() > cutoff {
            last = r;
        }
    }
    last + 0.5
}

fn sample<W: Fn(f64) -> f64>(w: &W, r_max: f64, n: usize) -> (Vec<f64>, f64) {
    let h = r_max / n as f64;
    ((0..=n).map(|i| w(i as f64 * h)).collect(), h)
}

/// Bound-state verdict at `ε = −threshold` on two grid levels; a state
/// is declared absent only when both levels count none.
fn has_bound_state<W: Fn(f64) -> f64>(w: &W, range: f64, opts: &RadialOptions) -> bool {
    let r_end = range.max(20.0);
    let n = opts.intervals_for(r_end);
    let kappa = opts.existence_threshold.sqrt();
    [n, 2 * n].iter().any(|&m| {
        let (wv, h) = sample(w, r_end, m);
        numerov::count_below(&wv, h, kappa) > 0
    })
}

fn auto_r_max(epsilon: f64) -> f64 {
    (15.0 / epsilon.abs().max(1e-4).sqrt()).max(40.0)
}

struct Level {
    epsilon: f64,
    gap: f64,
    u: Vec<f64>,
    h: f64,
}

/// Coarse and fine Numerov solves with `h⁴` Richardson extrapolation, or
/// `None` if either grid has no state below `upper`.
fn two_level<W: Fn(f64) -> f64>(
    w: &W,
    r_max: f64,
    upper: f64,
    opts: &RadialOptions,
    guess: Option<f64>,
) -> Option<Level> {
    let n = opts.intervals_for(r_max);
    let (wc, hc) = sample(w, r_max, n);
    let coarse = numerov::lowest_eigen(&wc, hc, upper, guess, INNER_TOL)?;
    let (wf, hf) = sample(w, r_max, 2 * n);
    let fine = numerov::lowest_eigen(&wf, hf, upper, Some(coarse.epsilon), INNER_TOL)?;
    let diff = fine.epsilon - coarse.epsilon;
    Some(Level {
        epsilon: fine.epsilon + diff / 15.0,
        gap: diff.abs(),
        u: fine.u,
        h: hf,
    })
}

/// Absolute eigenvalue tolerance of a single-grid solve.
const INNER_TOL: f64 = 1e-12;

/// Lowest eigenvalue and normalised wavefunction, or `None` when no state
/// lies below `−existence_threshold`.
pub fn ground_state<W: Fn(f64) -> f64>(w: W, opts: &RadialOptions) -> Result<Option<RadialSolution>> {
    ground_state_near(w, opts, None)
}

/// As [`ground_state`], seeding the eigenvalue search with `guess`.
pub fn ground_state_near<W: Fn(f64) -> f64>(
    w: W,
    opts: &RadialOptions,
    guess: Option<f64>,
) -> Result<Option<RadialSolution>> {
    opts.validate()?;
    let range = potential_range(&w);
    if !has_bound_state(&w, range, opts) {
        return Ok(None);
    }

    let upper = -opts.existence_threshold;
    let mut r_max = match opts.r_max {
        Some(r) => r.max(range),
        None => {
            let estimate = match guess {
                Some(g) => g,
                None => {
                    let probe = 40f64.max(range);
                    let (wv, h) = sample(&w, probe, opts.intervals_for(probe));
                    numerov::lowest_eigen(&wv, h, upper, None, 1e-10)
                        .map(|s| s.epsilon)
                        .unwrap_or(upper)
                }
            };
            auto_r_max(estimate).max(range)
        }
    };

    let Some(mut current) = two_level(&w, r_max, upper, opts, guess) else {
        return Ok(None);
    };
    if opts.r_max.is_none() {
        // a shallow state may want a wider box than the first estimate gave
        let wanted = auto_r_max(current.epsilon);
        if wanted > r_max * 1.01 {
            r_max = wanted;
            let Some(next) = two_level(&w, r_max, upper, opts, Some(current.epsilon)) else {
                return Ok(None);
            };
            current = next;
        }
    }

    let mut converged = false;
    for _ in 0..=opts.max_refinements {
        let Some(wider) = two_level(&w, 1.5 * r_max, upper, opts, Some(current.epsilon)) else {
            return Ok(None);
        };
        let shift = (wider.epsilon - current.epsilon).abs();
        r_max *= 1.5;
        current = wider;
        if shift < opts.tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RadialNotConverged(format!(
            "eigenvalue still moving after {} domain enlargements (r_max={r_max})",
            opts.max_refinements
        )));
    }
    if current.epsilon >= upper {
        return Ok(None);
    }
    let n = current.u.len() - 1;
    Ok(Some(RadialSolution {
        epsilon: current.epsilon,
        grid: (0..=n).map(|i| i as f64 * current.h).collect(),
        u: current.u,
        converged,
        richardson_gap: current.gap,
        r_max,
    }))
}

/// Finite-difference step of the oracle's coarse grid.
const ORACLE_STEP: f64 = 0.0025;

fn oracle_diagonal<W: Fn(f64) -> f64>(w: &W, r_max: f64, n: usize) -> (Vec<f64>, f64) {
    let h = r_max / n as f64;
    let interior: Vec<f64> = (1..n).map(|i| w(i as f64 * h)).collect();
    (sturm::dirichlet_diagonal(&interior, h), h)
}

fn oracle_intervals(r_max: f64) -> usize {
    ((r_max / ORACLE_STEP).ceil() as usize).next_power_of_two()
}

/// Independent lowest-eigenvalue check: Sturm bisection on the
/// finite-difference matrix at two grid levels, Richardson-extrapolated
/// from `h²` to `h⁴`.
///
/// Existence uses the Sturm count at `ε = −threshold` with the exact
/// decaying tail `u_n = u_{n−1}·e^{−κh}` closing the last row, so that
/// shallow states are not lost to the finite box.
pub fn ground_state_oracle<W: Fn(f64) -> f64>(w: W, opts: &RadialOptions) -> Result<Option<f64>> {
    opts.validate()?;
    let threshold = opts.existence_threshold;
    let range = potential_range(&w).max(20.0);
    let kappa = threshold.sqrt();
    let n_ex = oracle_intervals(range);
    let exists = [n_ex, 2 * n_ex].iter().any(|&n| {
        let (mut diag, h) = oracle_diagonal(&w, range, n);
        let last = diag.len() - 1;
        diag[last] -= (-kappa * h).exp() / (h * h);
        sturm::sturm_count(&diag, -1.0 / (h * h), -threshold) > 0
    });
    if !exists {
        return Ok(None);
    }

    let solve = |r_max: f64, n: usize| -> Option<f64> {
        let (diag, h) = oracle_diagonal(&w, r_max, n);
        sturm::lowest_by_bisection(&diag, -1.0 / (h * h), 0.0, 1e-15)
    };

    let mut r_max = opts.r_max.unwrap_or_else(|| {
        let probe = 40f64.max(range);
        let estimate = solve(probe, oracle_intervals(probe) / 4).unwrap_or(-1e-4);
        auto_r_max(estimate)
    });
    let mut previous: Option<f64> = None;
    for _ in 0..=opts.max_refinements {
        let n = oracle_intervals(r_max);
        let extrapolated = match (solve(r_max, n), solve(r_max, 2 * n)) {
            (Some(c), Some(f)) => f + (f - c) / 3.0,
            _ => {
                r_max *= 1.5;
                continue;
            }
        };
        if let Some(p) = previous {
            if (extrapolated - p).abs() < opts.tolerance {
                return Ok((extrapolated < -threshold).then_some(extrapolated));
            }
        }
        previous = Some(extrapolated);
        r_max *= 1.5;
    }
    Err(Error::RadialNotConverged(
        "finite-difference oracle did not settle under domain enlargement".into(),
    ))
}

/// `⟨f⟩ = ∫ f(r) u(r)² dr` for a normalised radial solution.
pub fn expectation_f(sol: &RadialSolution, shape: &PotentialShape) -> f64 {
    let integrand: Vec<f64> = sol
        .grid
        .iter()
        .zip(&sol.u)
        .map(|(&r, &u)| shape.eval(r) * u * u)
        .collect();
    simpson(&integrand, sol.step())
}
