//! Gaussian upper bound `e_g` and the comparison value `e_2g`, each the
//! interior minimum over the inverse width `s` of a one-dimensional
//! energy function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{potential_j, PotentialShape};
use crate::specfun::kinetic_i;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationalResult {
    /// Minimising inverse width `s = 1/σ`.
    pub s_star: f64,
    pub value: f64,
    /// An interior stationary minimum was found.
    pub stationary: bool,
    /// `lim_{s→0} E(s) = μ`, never attained.
    pub boundary_infimum: f64,
}

const SCAN_POINTS: usize = 240;
const SCAN_LO: f64 = 1e-3;
const SCAN_LO_MASSLESS: f64 = 1e-2;
const SCAN_HI: f64 = 1e3;
/// Density multiplier of the second scan when the first finds no minimum.
const RESCAN_FACTOR: usize = 4;
/// Golden-section stop on `|Δs|/s`.
const S_REL_TOL: f64 = 1e-8;

fn check(mu: f64, nu: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must be non-negative, got {mu}")));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    Ok(())
}

/// `√c·s·I(μ²/(2c·s²)) + ν·J(1/s)`; `c = 1` is the Gaussian energy.
fn scaled_energy(shape: &PotentialShape, mu: f64, nu: f64, c: f64, s: f64) -> Result<f64> {
    let kinetic = c.sqrt() * s * kinetic_i(mu * mu / (2.0 * c * s * s));
    Ok(kinetic + nu * potential_j(shape, 1.0 / s)?)
}

/// `E(s) = s·I(μ²/(2s²)) + ν·J(1/s)`.
pub fn gaussian_energy(shape: &PotentialShape, mu: f64, nu: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
    }
    scaled_energy(shape, mu, nu, 1.0, s)
}

/// `E₂(s) = √c·s·I(μ²/(2c·s²)) + ν·J(1/s)` with `c = 1/(2λ)`.
pub fn pair_energy(shape: &PotentialShape, mu: f64, nu: f64, lambda: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
    }
    scaled_energy(shape, mu, nu, 1.0 / (2.0 * lambda), s)
}

/// Golden-section minimum of `energy(exp(t))` on `[a, b]` in `t = ln s`.
fn golden<E: Fn(f64) -> Result<f64>>(energy: &E, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = energy(x1.exp())?;
    let mut f2 = energy(x2.exp())?;
    while b - a > S_REL_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = energy(x1.exp())?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = energy(x2.exp())?;
        }
    }
    Ok(if f1 <= f2 { (x1.exp(), f1) } else { (x2.exp(), f2) })
}

/// Interior minima of `energy` on a log grid, each refined by golden
/// section. Returns the lowest, ties going to the smaller `s`.
fn scan_minimum<E: Fn(f64) -> Result<f64>>(energy: &E, lo: f64, points: usize) -> Result<Option<(f64, f64)>> {
    let (tl, th) = (lo.ln(), SCAN_HI.ln());
    let t: Vec<f64> = (0..points)
        .map(|i| tl + (th - tl) * i as f64 / (points - 1) as f64)
        .collect();
    let values = t.iter().map(|&ti| energy(ti.exp())).collect::<Result<Vec<f64>>>()?;
    let mut best: Option<(f64, f64)> = None;
    for i in 1..points - 1 {
        // slope turns from negative to non-negative at i
        if values[i] < values[i - 1] && values[i] <= values[i + 1] {
            let (s, v) = golden(energy, t[i - 1], t[i + 1])?;
            if best.is_none_or(|(bs, bv)| v < bv || (v == bv && s < bs)) {
                best = Some((s, v));
            }
        }
    }
    Ok(best)
}

fn minimise<E: Fn(f64) -> Result<f64>>(energy: E, mu: f64) -> Result<Option<VariationalResult>> {
    let lo = if mu == 0.0 { SCAN_LO_MASSLESS } else { SCAN_LO };
    let found = match scan_minimum(&energy, lo, SCAN_POINTS)? {
        Some(m) => Some(m),
        None => scan_minimum(&energy, lo, RESCAN_FACTOR * (SCAN_POINTS - 1) + 1)?,
    };
    Ok(found.map(|(s_star, value)| VariationalResult {
        s_star,
        value,
        stationary: true,
        boundary_infimum: mu,
    }))
}

/// Gaussian upper bound `e_g`: the interior stationary minimum of `E(s)`.
pub fn upper_bound_eg(shape: &PotentialShape, mu: f64, nu: f64) -> Result<Option<VariationalResult>> {
    check(mu, nu)?;
    minimise(|s| scaled_energy(shape, mu, nu, 1.0, s), mu)
}

/// `e_2g`, the Gaussian expectation of the pair Hamiltonian with
/// `c = 1/(2λ)`; at `λ = 1/2` it coincides with `e_g`.
pub fn upper_bound_e2g(shape: &PotentialShape, mu: f64, nu: f64, lambda: f64) -> Result<Option<VariationalResult>> {
    check(mu, nu)?;
    if !(0.5..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in [1/2, 1], got {lambda}"
        )));
    }
    let c = 1.0 / (2.0 * lambda);
    minimise(|s| scaled_energy(shape, mu, nu, c, s), mu)
}
