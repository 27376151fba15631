//! Double-exponential quadrature for smooth integrands on `[0, ∞)`.
//!
//! The half line is split at `t = 1`: tanh-sinh on `[0, 1]` and exp-sinh
//! (`t = 1 + exp(π/2·sinh τ)`) on `[1, ∞)`. Each piece halves its step until
//! two successive trapezoid sums agree.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Number of step halvings after the initial unit step.
    pub max_levels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_levels: 10,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tolerances must be positive".into()));
        }
        Ok(())
    }

    fn accepts(&self, current: f64, previous: f64) -> bool {
        (current - previous).abs() <= self.abs_tol.max(self.rel_tol * current.abs())
    }
}

/// Abscissa-weight generator in the transformed variable.
trait DeMap {
    /// Node and weight at transformed coordinate `tau`, or `None` once the
    /// node has collapsed onto an endpoint.
    fn node(&self, tau: f64) -> Option<(f64, f64)>;
    const TAU_MAX: f64;
}

/// tanh-sinh on `[a, b]`.
struct TanhSinh {
    a: f64,
    b: f64,
}

impl DeMap for TanhSinh {
    const TAU_MAX: f64 = 3.5;

    fn node(&self, tau: f64) -> Option<(f64, f64)> {
        let half = 0.5 * (self.b - self.a);
        let u = FRAC_PI_2 * tau.sinh();
        // distance to the nearer endpoint, computed without cancellation
        let e = (-2.0 * u.abs()).exp();
        let gap = half * 2.0 * e / (1.0 + e);
        if gap == 0.0 {
            return None;
        }
        let x = if u >= 0.0 { self.b - gap } else { self.a + gap };
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = half * FRAC_PI_2 * tau.cosh() * sech2;
        Some((x, w))
    }
}

/// exp-sinh on `[a, ∞)`.
struct ExpSinh {
    a: f64,
}

impl DeMap for ExpSinh {
    const TAU_MAX: f64 = 4.5;

    fn node(&self, tau: f64) -> Option<(f64, f64)> {
        let g = (FRAC_PI_2 * tau.sinh()).exp();
        if g == 0.0 || !g.is_finite() {
            return None;
        }
        Some((self.a + g, FRAC_PI_2 * tau.cosh() * g))
    }
}

fn de_integrate<M: DeMap, F: Fn(f64) -> f64>(map: &M, f: &F, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let sample = |tau: f64| -> f64 {
        match map.node(tau) {
            Some((x, w)) if w > 0.0 => {
                let v = f(x) * w;
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            }
            _ => 0.0,
        }
    };

    let mut h = 1.0;
    let n0 = M::TAU_MAX.ceil() as i64;
    let mut sum: f64 = (-n0..=n0).map(|k| sample(k as f64)).sum();
    let mut estimate = h * sum;

    for _ in 0..spec.max_levels {
        h *= 0.5;
        let steps = (M::TAU_MAX / h).ceil() as i64;
        let mut odd = 0.0;
        let mut k = -steps + if steps % 2 == 0 { 1 } else { 0 };
        while k <= steps {
            odd += sample(k as f64 * h);
            k += 2;
        }
        sum += odd;
        let next = h * sum;
        if spec.accepts(next, estimate) {
            return Ok((next, (next - estimate).abs()));
        }
        estimate = next;
    }
    Err(Error::QuadratureNotConverged {
        levels: spec.max_levels,
        estimate,
        error: f64::NAN,
    })
}

/// `∫_a^b g(t) dt` by tanh-sinh.
pub fn integrate_tanh_sinh<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(b > a) {
        return Err(Error::InvalidParameter(format!(
            "integration interval must satisfy a < b, got [{a}, {b}]"
        )));
    }
    de_integrate(&TanhSinh { a, b }, &g, spec).map(|(v, _)| v)
}

/// `∫₀^∞ g(t) dt` for smooth `g` with at least Gaussian-times-polynomial decay.
pub fn integrate_semiinfinite<F: Fn(f64) -> f64>(g: F, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let (head, _) = de_integrate(&TanhSinh { a: 0.0, b: 1.0 }, &g, spec)?;
    let (tail, _) = de_integrate(&ExpSinh { a: 1.0 }, &g, spec)?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gaussian_second_moment() {
        let c = 4.0 / PI.sqrt();
        let v = integrate_semiinfinite(|t| c * (-t * t).exp() * t * t, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn gaussian_third_moment() {
        let c = 4.0 / PI.sqrt();
        let v = integrate_semiinfinite(|t| c * (-t * t).exp() * t.powi(3), &spec()).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn damped_second_moment() {
        // (4/√π)∫ e^{−t²−2t} t² dt = −J(2) for the exponential shape (mpmath)
        let c = 4.0 / PI.sqrt();
        let v = integrate_semiinfinite(|t| c * (-t * t - 2.0 * t).exp() * t * t, &spec()).unwrap();
        assert!((v - 0.15437156137190843934).abs() < 1e-12, "{v}");
    }

    #[test]
    fn finite_interval() {
        let v = integrate_tanh_sinh(|t| t.sqrt(), 0.0, 4.0, &spec()).unwrap();
        assert!((v - 16.0 / 3.0).abs() < 1e-11);
        assert!(integrate_tanh_sinh(|t| t, 1.0, 1.0, &spec()).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadratureSpec {
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            max_levels: 1,
        };
        let r = integrate_semiinfinite(|t| (t * 40.0).sin().abs() * (-t).exp(), &tight);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn rejects_bad_tolerance() {
        let bad = QuadratureSpec {
            rel_tol: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(integrate_semiinfinite(|t| (-t).exp(), &bad).is_err());
    }
}
