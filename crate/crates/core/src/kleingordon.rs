//! Lower bound from the Klein–Gordon problem `(p² + μ²)φ = (νf − e)²φ`.
//!
//! In Schrödinger form the operator is `p² + W` with
//! `W = 2eνf − (νf)²`. Its lowest eigenvalue, clipped at the continuum
//! edge, is the spectral function `F(e)`; Klein–Gordon energies are the
//! roots of `F(e) = e² − μ²` that also satisfy `F′(e) < 2e`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{kg_effective_potential, PotentialShape};
use crate::radial::{expectation_f, ground_state_near, RadialOptions, RadialSolution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KgOptions {
    /// Uniform scan points over `e ∈ [−μ + 1e-6, μ]`.
    pub scan_points: usize,
    /// Bracket width at which root bisection stops.
    pub root_tol: f64,
    /// Bracket width at which ν-bisection stops.
    pub nu_tol: f64,
    pub radial: RadialOptions,
}

impl Default for KgOptions {
    fn default() -> Self {
        Self {
            scan_points: 400,
            root_tol: 1e-9,
            nu_tol: 1e-6,
            radial: RadialOptions::default(),
        }
    }
}

/// Offset of the lower scan edge from `−μ`.
const SCAN_EDGE: f64 = 1e-6;

/// Subdivision factor used around a suspected pair of close roots.
const PAIR_REFINE: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KgSolution {
    pub e_k: f64,
    /// `F(e_k)`, equal to `e_k² − μ²` up to the root tolerance.
    pub f_value: f64,
    /// `F′(e_k) = 2ν⟨f⟩`.
    pub f_prime: f64,
    /// `F′(e_k) < 2e_k`.
    pub valid: bool,
    /// Final bisection bracket around `e_k`.
    pub bracket: (f64, f64),
    /// Every root found by the scan, ascending.
    pub all_roots: Vec<f64>,
}

impl KgSolution {
    pub fn residual(&self, mu: f64) -> f64 {
        (self.f_value - (self.e_k * self.e_k - mu * mu)).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub e: f64,
    pub f: f64,
    pub exists: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCurve {
    pub nu: f64,
    pub shape: String,
    pub points: Vec<SpectralPoint>,
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    Ok(())
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must be non-negative, got {mu}")));
    }
    Ok(())
}

fn spectral_state(
    shape: &PotentialShape,
    nu: f64,
    e: f64,
    radial: &RadialOptions,
    guess: Option<f64>,
) -> Result<Option<RadialSolution>> {
    let w = kg_effective_potential(shape, e, nu)?;
    ground_state_near(|r| w.eval(r), radial, guess)
}

/// `F(e)` and whether a bound state exists; `F = 0` when none does.
pub fn spectral_f(shape: &PotentialShape, nu: f64, e: f64) -> Result<(f64, bool)> {
    spectral_f_with(shape, nu, e, &RadialOptions::default())
}

pub fn spectral_f_with(shape: &PotentialShape, nu: f64, e: f64, radial: &RadialOptions) -> Result<(f64, bool)> {
    check_nu(nu)?;
    Ok(match spectral_state(shape, nu, e, radial, None)? {
        Some(s) => (s.epsilon, true),
        None => (0.0, false),
    })
}

/// `F′(e) = 2ν⟨f⟩` by Hellmann–Feynman. Fails with
/// [`Error::NoBoundState`] when `F` sits at the continuum edge.
pub fn spectral_f_prime(shape: &PotentialShape, nu: f64, e: f64) -> Result<f64> {
    spectral_f_prime_with(shape, nu, e, &RadialOptions::default())
}

pub fn spectral_f_prime_with(shape: &PotentialShape, nu: f64, e: f64, radial: &RadialOptions) -> Result<f64> {
    check_nu(nu)?;
    let sol = spectral_state(shape, nu, e, radial, None)?.ok_or(Error::NoBoundState)?;
    Ok(2.0 * nu * expectation_f(&sol, shape))
}

/// Evaluates `g(e) = F(e) − e² + μ²` along an ascending grid, seeding
/// each radial solve with the previous eigenvalue.
struct Scanner<'a> {
    shape: &'a PotentialShape,
    mu: f64,
    nu: f64,
    radial: &'a RadialOptions,
}

impl Scanner<'_> {
    fn state(&self, e: f64, guess: Option<f64>) -> Result<Option<RadialSolution>> {
        spectral_state(self.shape, self.nu, e, self.radial, guess)
    }

    fn g(&self, e: f64, guess: Option<f64>) -> Result<(f64, Option<f64>)> {
        let f = self.state(e, guess)?.map(|s| s.epsilon);
        Ok((f.unwrap_or(0.0) - e * e + self.mu * self.mu, f))
    }

    fn sample(&self, grid: &[f64]) -> Result<Vec<f64>> {
        let mut guess = None;
        let mut out = Vec::with_capacity(grid.len());
        for &e in grid {
            let (g, f) = self.g(e, guess)?;
            guess = f;
            out.push(g);
        }
        Ok(out)
    }

    /// Bisection on a strict sign change, finished by one secant step.
    fn refine(&self, mut a: f64, mut ga: f64, mut b: f64, mut gb: f64, tol: f64) -> Result<(f64, (f64, f64))> {
        while b - a > tol {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let (gm, _) = self.g(m, None)?;
            if gm == 0.0 {
                return Ok((m, (a, b)));
            }
            if (gm < 0.0) == (ga < 0.0) {
                a = m;
                ga = gm;
            } else {
                b = m;
                gb = gm;
            }
        }
        let root = a - ga * (b - a) / (gb - ga);
        Ok((root.clamp(a, b), (a, b)))
    }
}

fn uniform(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let n = points - 1;
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

/// Sign-change cells of `values`, as index pairs.
fn sign_changes(values: &[f64]) -> Vec<usize> {
    (0..values.len() - 1)
        .filter(|&i| values[i] * values[i + 1] < 0.0)
        .collect()
}

/// Interior local extrema of `g` that come close to zero relative to the
/// local variation: two roots may hide inside the adjacent cells.
fn suspected_pairs(g: &[f64]) -> Vec<usize> {
    (1..g.len() - 1)
        .filter(|&i| {
            let (dl, dr) = (g[i] - g[i - 1], g[i + 1] - g[i]);
            let extremum = dl * dr < 0.0;
            let same_side = g[i - 1] * g[i] > 0.0 && g[i] * g[i + 1] > 0.0;
            extremum && same_side && g[i].abs() < dl.abs() + dr.abs()
        })
        .collect()
}

/// Klein–Gordon energy for `(μ, ν)` with default options.
pub fn solve_kg(shape: &PotentialShape, mu: f64, nu: f64) -> Result<Option<KgSolution>> {
    solve_kg_with(shape, mu, nu, &KgOptions::default())
}

/// Scans `g(e)` over `[−μ + 1e-6, μ]`, refines every sign change and
/// returns the largest root with `F′ < 2e`. When roots exist but none is
/// valid, the largest one is returned with `valid = false`. `None` means
/// no root at all; for `μ = 0` the interval is empty.
pub fn solve_kg_with(shape: &PotentialShape, mu: f64, nu: f64, opts: &KgOptions) -> Result<Option<KgSolution>> {
    check_mu(mu)?;
    check_nu(nu)?;
    if opts.scan_points < 3 {
        return Err(Error::InvalidParameter("scan_points must be at least 3".into()));
    }
    if mu <= SCAN_EDGE {
        return Ok(None);
    }
    let scan = Scanner {
        shape,
        mu,
        nu,
        radial: &opts.radial,
    };
    let grid = uniform(-mu + SCAN_EDGE, mu, opts.scan_points);
    let g = scan.sample(&grid)?;

    let mut cells: Vec<(f64, f64, f64, f64)> = sign_changes(&g)
        .into_iter()
        .map(|i| (grid[i], g[i], grid[i + 1], g[i + 1]))
        .collect();
    for i in suspected_pairs(&g) {
        let fine_grid = uniform(grid[i - 1], grid[i + 1], 2 * PAIR_REFINE + 1);
        let fine = scan.sample(&fine_grid)?;
        cells.extend(
            sign_changes(&fine)
                .into_iter()
                .map(|j| (fine_grid[j], fine[j], fine_grid[j + 1], fine[j + 1])),
        );
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    if cells.is_empty() {
        return Ok(None);
    }

    let mut roots = Vec::with_capacity(cells.len());
    for &(a, ga, b, gb) in &cells {
        roots.push(scan.refine(a, ga, b, gb, opts.root_tol)?);
    }
    let all_roots: Vec<f64> = roots.iter().map(|r| r.0).collect();

    let mut fallback = None;
    for &(e, bracket) in roots.iter().rev() {
        let Some(sol) = scan.state(e, None)? else {
            // a root with F = 0 is a threshold, not a discrete state
            continue;
        };
        let f_prime = 2.0 * nu * expectation_f(&sol, shape);
        let candidate = KgSolution {
            e_k: e,
            f_value: sol.epsilon,
            f_prime,
            valid: f_prime < 2.0 * e,
            bracket,
            all_roots: all_roots.clone(),
        };
        if candidate.valid {
            return Ok(Some(candidate));
        }
        fallback.get_or_insert(candidate);
    }
    Ok(fallback)
}

/// `F(e)` on `e_grid` for every coupling in `nu_list`.
pub fn curve_sample(shape: &PotentialShape, nu_list: &[f64], e_grid: &[f64]) -> Result<Vec<SpectralCurve>> {
    curve_sample_with(shape, nu_list, e_grid, &RadialOptions::default())
}

pub fn curve_sample_with(
    shape: &PotentialShape,
    nu_list: &[f64],
    e_grid: &[f64],
    radial: &RadialOptions,
) -> Result<Vec<SpectralCurve>> {
    if nu_list.is_empty() || e_grid.is_empty() {
        return Err(Error::InvalidParameter("curve grids must be non-empty".into()));
    }
    nu_list
        .iter()
        .map(|&nu| single_curve(shape, nu, e_grid, radial))
        .collect()
}

pub fn single_curve(shape: &PotentialShape, nu: f64, e_grid: &[f64], radial: &RadialOptions) -> Result<SpectralCurve> {
    check_nu(nu)?;
    let mut guess = None;
    let mut points = Vec::with_capacity(e_grid.len());
    for &e in e_grid {
        let state = spectral_state(shape, nu, e, radial, guess)?;
        guess = state.as_ref().map(|s| s.epsilon);
        points.push(SpectralPoint {
            e,
            f: guess.unwrap_or(0.0),
            exists: state.is_some(),
        });
    }
    Ok(SpectralCurve {
        nu,
        shape: shape.name().to_string(),
        points,
    })
}

fn has_valid_solution(shape: &PotentialShape, mu: f64, nu: f64, opts: &KgOptions) -> Result<bool> {
    Ok(solve_kg_with(shape, mu, nu, opts)?.is_some_and(|s| s.valid))
}

/// Geometric ν ladder used to bracket existence changes.
const NU_LADDER_START: f64 = 1.0 / 16.0;
const NU_LADDER_RATIO: f64 = 1.25;
const NU_LADDER_MAX: f64 = 1e3;

/// Bisects `[lo, hi]` where `exists(lo) != exists(hi)`, returning the
/// endpoint on the side of `keep` once the bracket is below `tol`.
fn bisect_nu<P: FnMut(f64) -> Result<bool>>(
    mut lo: f64,
    mut hi: f64,
    lo_exists: bool,
    tol: f64,
    mut exists: P,
) -> Result<(f64, f64)> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if exists(mid)? == lo_exists {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Smallest ν with a valid Klein–Gordon solution.
pub fn critical_nu(shape: &PotentialShape, mu: f64) -> Result<f64> {
    critical_nu_with(shape, mu, &KgOptions::default())
}

pub fn critical_nu_with(shape: &PotentialShape, mu: f64, opts: &KgOptions) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "critical coupling needs mu > 0, got {mu}"
        )));
    }
    let exists = |nu: f64| has_valid_solution(shape, mu, nu, opts);
    let mut below = NU_LADDER_START;
    if exists(below)? {
        return Err(Error::BracketFailure(format!("solution already exists at nu={below}")));
    }
    let mut above = below * NU_LADDER_RATIO;
    while !exists(above)? {
        below = above;
        above *= NU_LADDER_RATIO;
        if above > NU_LADDER_MAX {
            return Err(Error::BracketFailure(format!(
                "no solution for nu up to {NU_LADDER_MAX}"
            )));
        }
    }
    let (_, hi) = bisect_nu(below, above, false, opts.nu_tol, exists)?;
    Ok(hi)
}

/// Largest ν with a valid Klein–Gordon solution.
pub fn supercritical_nu(shape: &PotentialShape, mu: f64) -> Result<f64> {
    supercritical_nu_with(shape, mu, &KgOptions::default())
}

pub fn supercritical_nu_with(shape: &PotentialShape, mu: f64, opts: &KgOptions) -> Result<f64> {
    supercritical_nu_from(shape, mu, critical_nu_with(shape, mu, opts)?, opts)
}

/// As [`supercritical_nu_with`], climbing from a coupling `start` at which
/// a valid solution is known to exist.
pub fn supercritical_nu_from(shape: &PotentialShape, mu: f64, start: f64, opts: &KgOptions) -> Result<f64> {
    let exists = |nu: f64| has_valid_solution(shape, mu, nu, opts);
    if !exists(start)? {
        return Err(Error::BracketFailure(format!(
            "no solution at the starting coupling nu={start}"
        )));
    }
    let mut below = start;
    let mut above = start * NU_LADDER_RATIO;
    while exists(above)? {
        below = above;
        above *= NU_LADDER_RATIO;
        if above > NU_LADDER_MAX {
            return Err(Error::BracketFailure(format!(
                "solution persists beyond nu={NU_LADDER_MAX}"
            )));
        }
    }
    let (lo, _) = bisect_nu(below, above, true, opts.nu_tol, exists)?;
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{exponential_shape, gaussian_shape};
    use crate::radial::ground_state_oracle;

    #[test]
    fn vanishing_coupling_binds_nothing() {
        let (f, exists) = spectral_f(&exponential_shape(), 1e-6, 1.0).unwrap();
        assert_eq!((f, exists), (0.0, false));
        assert!(matches!(
            spectral_f_prime(&exponential_shape(), 1e-6, 1.0),
            Err(Error::NoBoundState)
        ));
    }

    #[test]
    fn self_consistent_at_published_root() {
        let e = 0.980384;
        let (f, exists) = spectral_f(&exponential_shape(), 1.0, e).unwrap();
        assert!(exists);
        // the root is printed to 6 decimals and |g′| < 2 nearby
        assert!((f - (e * e - 1.0)).abs() < 2e-6, "{f}");
    }

    #[test]
    fn spectral_value_matches_oracle() {
        let shape = exponential_shape();
        let (f, _) = spectral_f(&shape, 2.0, 0.5).unwrap();
        let w = kg_effective_potential(&shape, 0.5, 2.0).unwrap();
        let oracle = ground_state_oracle(|r| w.eval(r), &RadialOptions::default())
            .unwrap()
            .unwrap();
        assert!((f - oracle).abs() < 1e-7, "{f} vs {oracle}");
    }

    #[test]
    fn hellmann_feynman_matches_central_difference() {
        let shape = exponential_shape();
        for (nu, e) in [(1.0, 0.980384), (2.5, 0.58089), (4.0, -0.3)] {
            let fp = spectral_f_prime(&shape, nu, e).unwrap();
            let h = 1e-4;
            let plus = spectral_f(&shape, nu, e + h).unwrap().0;
            let minus = spectral_f(&shape, nu, e - h).unwrap().0;
            let fd = (plus - minus) / (2.0 * h);
            assert!(fp < 0.0);
            assert!((fp - fd).abs() < 1e-5, "nu={nu} e={e}: {fp} vs {fd}");
        }
    }

    #[test]
    fn published_roots() {
        let shape = exponential_shape();
        for (nu, want) in [(1.0, 0.980384), (2.5, 0.580890), (5.67, -0.993110)] {
            let sol = solve_kg(&shape, 1.0, nu).unwrap().unwrap();
            assert!(sol.valid);
            assert!((sol.e_k - want).abs() < 5e-5, "nu={nu}: {}", sol.e_k);
            assert!(sol.residual(1.0) < 1e-8, "residual {}", sol.residual(1.0));
            assert!(sol.f_prime < 2.0 * sol.e_k);
            assert!(sol.bracket.0 <= sol.e_k && sol.e_k <= sol.bracket.1);
        }
    }

    #[test]
    fn supercritical_coupling_has_no_root() {
        assert!(solve_kg(&exponential_shape(), 1.0, 5.8).unwrap().is_none());
    }

    #[test]
    fn massless_interval_is_empty() {
        assert!(solve_kg(&exponential_shape(), 0.0, 2.0).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_inputs() {
        let shape = exponential_shape();
        assert!(solve_kg(&shape, -1.0, 1.0).is_err());
        assert!(solve_kg(&shape, 1.0, 0.0).is_err());
        assert!(spectral_f(&shape, -1.0, 0.0).is_err());
        assert!(curve_sample(&shape, &[], &[0.0]).is_err());
    }

    #[test]
    fn weak_curve_is_flat_zero() {
        let grid: Vec<f64> = (0..5).map(|i| -1.0 + 0.5 * i as f64).collect();
        let curves = curve_sample(&exponential_shape(), &[0.05], &grid).unwrap();
        assert!(curves[0].points.iter().all(|p| p.f == 0.0 && !p.exists));
    }

    #[test]
    fn curve_is_never_positive_and_brackets_root() {
        let shape = exponential_shape();
        let grid: Vec<f64> = (0..100).map(|i| -1.5 + 3.0 * i as f64 / 99.0).collect();
        let curve = &curve_sample(&shape, &[3.0], &grid).unwrap()[0];
        assert_eq!(curve.shape, "exp");
        assert!(curve.points.iter().all(|p| p.f <= 0.0));

        let grid = [0.97, 0.99];
        let curve = &curve_sample(&shape, &[1.0], &grid).unwrap()[0];
        let g: Vec<f64> = curve.points.iter().map(|p| p.f - p.e * p.e + 1.0).collect();
        let root = grid[0] - g[0] * (grid[1] - grid[0]) / (g[1] - g[0]);
        assert!(g[0] * g[1] < 0.0);
        assert!((root - 0.980384).abs() < 1e-3);
    }

    #[test]
    fn gaussian_shape_root_is_consistent() {
        let shape = gaussian_shape();
        let sol = solve_kg(&shape, 1.0, 3.0).unwrap().unwrap();
        assert!(sol.residual(1.0) < 1e-8);
        let (f, _) = spectral_f(&shape, 3.0, sol.e_k).unwrap();
        assert!((f - sol.f_value).abs() < 1e-9);
    }

    #[test]
    fn pair_detection_flags_near_zero_extremum() {
        let g = [1.0, 0.3, 0.05, 0.4, 1.2];
        assert_eq!(suspected_pairs(&g), vec![2]);
        let far = [1.0, 0.8, 0.7, 0.8, 1.0];
        assert!(suspected_pairs(&far).is_empty());
    }
}
