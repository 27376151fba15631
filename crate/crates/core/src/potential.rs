//! Attractive pair-potential shapes `f(r) ≤ 0`, their Gaussian-smeared
//! averages `J(y)`, and the effective radial potential of the Klein–Gordon
//! problem.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::{erfcx, integrate_semiinfinite, QuadratureSpec, TWO_OVER_SQRT_PI};

/// Beyond this argument the exponential-shape `J(y)` switches from the
/// erfcx form, which cancels like `y⁴`, to its asymptotic series.
const EXP_J_ASYMPTOTIC_FROM: f64 = 12.0;

/// A bounded attractive shape. Built-in shapes are monotone non-decreasing
/// and vanish at infinity.
#[derive(Clone, Copy)]
pub struct PotentialShape {
    name: &'static str,
    eval: fn(f64) -> f64,
    j_closed: Option<fn(f64) -> f64>,
    depth_at_zero: f64,
}

impl fmt::Debug for PotentialShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialShape")
            .field("name", &self.name)
            .field("depth_at_zero", &self.depth_at_zero)
            .field("closed_form_j", &self.j_closed.is_some())
            .finish()
    }
}

impl PotentialShape {
    /// Validates a user shape: `f(0)` finite, `f ≤ 0` on a sample grid and
    /// `f(r) → 0` for large `r`. Singular shapes such as Coulomb or Yukawa
    /// are rejected because `(νf)²` would make the effective potential
    /// `1/r²`-singular.
    pub fn new(name: &'static str, eval: fn(f64) -> f64, j_closed: Option<fn(f64) -> f64>) -> Result<Self> {
        let f0 = eval(0.0);
        if !f0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "shape '{name}' is singular at the origin"
            )));
        }
        for i in 0..=4000 {
            let r = 0.05 * i as f64;
            let v = eval(r);
            if !(v <= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "shape '{name}' is not attractive at r={r}: f={v}"
                )));
            }
        }
        let tail = eval(1e3).abs();
        if tail > 1e-12 * f0.abs().max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "shape '{name}' does not vanish at infinity (|f(1000)| = {tail})"
            )));
        }
        Ok(Self {
            name,
            eval,
            j_closed,
            depth_at_zero: f0,
        })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "exp" => Ok(exponential_shape()),
            "gauss" => Ok(gaussian_shape()),
            other => Err(Error::InvalidParameter(format!(
                "unknown shape '{other}' (expected 'exp' or 'gauss')"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    pub fn depth_at_zero(&self) -> f64 {
        self.depth_at_zero
    }

    pub fn has_closed_j(&self) -> bool {
        self.j_closed.is_some()
    }

    /// Closed-form `J(y)`, when the shape provides one.
    pub fn j_closed(&self, y: f64) -> Option<f64> {
        self.j_closed.map(|j| j(y))
    }

    #[cfg(test)]
    pub(crate) fn unchecked(name: &'static str, eval: fn(f64) -> f64) -> Self {
        Self {
            name,
            eval,
            j_closed: None,
            depth_at_zero: eval(0.0),
        }
    }
}

fn exp_eval(r: f64) -> f64 {
    -(-r).exp()
}

/// `J(y) = y/√π − ½(2 + y²)·erfcx(y/2)` for the exponential shape.
fn exp_j(y: f64) -> f64 {
    if y < EXP_J_ASYMPTOTIC_FROM {
        y / PI.sqrt() - 0.5 * (2.0 + y * y) * erfcx(0.5 * y).expect("y >= 0")
    } else {
        exp_j_asymptotic(y)
    }
}

/// `J(y) ~ −(4/√π) Σ_k (−1)^k (2k+2)! / (k! y^{2k+3})`, summed to its
/// smallest term. At `y ≥ 12` the truncation error is below `e^{−36}`.
fn exp_j_asymptotic(y: f64) -> f64 {
    let y2 = y * y;
    let mut term = 2.0 / (y2 * y);
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut k = 0.0;
    loop {
        sum += sign * term;
        let next = term * (2.0 * k + 3.0) * (2.0 * k + 4.0) / ((k + 1.0) * y2);
        if next >= term || next < 1e-18 * sum.abs() {
            break;
        }
        term = next;
        sign = -sign;
        k += 1.0;
    }
    -2.0 * TWO_OVER_SQRT_PI * sum
}

fn gauss_eval(r: f64) -> f64 {
    -(-r * r).exp()
}

/// `f(r) = −e^{−r}` with the closed-form `J`.
pub fn exponential_shape() -> PotentialShape {
    PotentialShape {
        name: "exp",
        eval: exp_eval,
        j_closed: Some(exp_j),
        depth_at_zero: -1.0,
    }
}

/// `f(r) = −e^{−r²}`; `J` goes through quadrature.
pub fn gaussian_shape() -> PotentialShape {
    PotentialShape {
        name: "gauss",
        eval: gauss_eval,
        j_closed: None,
        depth_at_zero: -1.0,
    }
}

/// Gaussian-weighted average of the shape:
/// `J(y) = (4/√π) ∫₀^∞ e^{−t²} f(yt) t² dt`.
pub fn potential_j(shape: &PotentialShape, y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::InvalidParameter(format!("J(y) needs y >= 0, got {y}")));
    }
    if y == 0.0 {
        return Ok(shape.depth_at_zero);
    }
    if let Some(v) = shape.j_closed(y) {
        return Ok(v);
    }
    potential_j_quadrature(shape, y, &QuadratureSpec::default())
}

/// Quadrature evaluation of `J(y)`, regardless of any closed form.
pub fn potential_j_quadrature(shape: &PotentialShape, y: f64, spec: &QuadratureSpec) -> Result<f64> {
    let c = 2.0 * TWO_OVER_SQRT_PI;
    integrate_semiinfinite(|t| c * (-t * t).exp() * shape.eval(y * t) * t * t, spec)
}

/// `W(r) = 2eν·f(r) − (ν·f(r))²`, the potential of the Schrödinger-form
/// Klein–Gordon operator `p² + W`.
#[derive(Debug, Clone, Copy)]
pub struct EffectivePotential {
    pub shape: PotentialShape,
    pub e: f64,
    pub nu: f64,
}

impl EffectivePotential {
    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        let vf = self.nu * self.shape.eval(r);
        2.0 * self.e * vf - vf * vf
    }

    /// `2|e|ν|f(0)| + ν²f(0)²`, an upper bound on `|W|`.
    pub fn magnitude_bound(&self) -> f64 {
        let d = self.nu * self.shape.depth_at_zero.abs();
        2.0 * self.e.abs() * d + d * d
    }
}

pub fn kg_effective_potential(shape: &PotentialShape, e: f64, nu: f64) -> Result<EffectivePotential> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    Ok(EffectivePotential { shape: *shape, e, nu })
}
