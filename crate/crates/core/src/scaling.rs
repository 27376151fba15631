//! Mapping between physical N-body parameters and the dimensionless
//! one-body parameters shared by both energy bounds.
//!
//! Units are ħ = c = 1. With `λ = (N−1)/N` and `γ = N(N−1)/2`:
//!
//! ```text
//! μ = m·a/√(2λ),   ν = √γ·v·a/2,   e = E·a/(2√γ)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the N-boson Hamiltonian with pair potential `v·f(r/a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub n_particles: u64,
    pub mass: f64,
    pub range: f64,
    pub coupling: f64,
}

impl PhysicalParams {
    pub fn new(n_particles: u64, mass: f64, range: f64, coupling: f64) -> Result<Self> {
        let p = Self {
            n_particles,
            mass,
            range,
            coupling,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_particles must be at least 2, got {}",
                self.n_particles
            )));
        }
        if !(self.range > 0.0) || !self.range.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "range must be positive, got {}",
                self.range
            )));
        }
        if !(self.coupling > 0.0) || !self.coupling.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling must be positive, got {}",
                self.coupling
            )));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass must be non-negative, got {}",
                self.mass
            )));
        }
        Ok(())
    }

    /// `γ = N(N−1)/2`, the number of particle pairs.
    pub fn gamma(&self) -> f64 {
        let n = self.n_particles as f64;
        0.5 * n * (n - 1.0)
    }

    /// `λ = (N−1)/N`.
    pub fn lambda(&self) -> f64 {
        let n = self.n_particles as f64;
        (n - 1.0) / n
    }
}

/// Dimensionless problem consumed by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledParams {
    pub mu: f64,
    pub nu: f64,
    pub lambda: f64,
    pub gamma: f64,
}

impl ScaledParams {
    /// Scaled problem in the `N → ∞` limit (`λ = 1`), the convention of the
    /// large-N tables. `gamma` is left at infinity.
    pub fn large_n(mu: f64, nu: f64) -> Result<Self> {
        let p = Self {
            mu,
            nu,
            lambda: 1.0,
            gamma: f64::INFINITY,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu >= 0.0) || !self.mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mu must be non-negative, got {}",
                self.mu
            )));
        }
        if !(self.nu > 0.0) || !self.nu.is_finite() {
            return Err(Error::InvalidParameter(format!("nu must be positive, got {}", self.nu)));
        }
        if !(0.5..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [1/2, 1], got {}",
                self.lambda
            )));
        }
        if !(self.gamma >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be at least 1, got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

/// Constants of the two-particle block of the Jacobi transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiConstants {
    /// `√(N/(N−1))`
    pub alpha: f64,
    /// `√((N−2)/(N−1))`
    pub beta: f64,
    /// `1/√(N(N−1))`, the common entry of the last Jacobi column.
    pub b: f64,
    /// `√((N−2)/N)`
    pub delta: f64,
}

impl JacobiConstants {
    /// Relative residuals of the six algebraic identities
    /// `α²+β²=2`, `b²+β²=λ`, `1/α²=λ`, `(N−1)b=1/α`, `Nb=α`, `δ=β/α`, `1+δ²=2λ`.
    pub fn identity_residuals(&self, n_particles: u64) -> [f64; 7] {
        let n = n_particles as f64;
        let lambda = (n - 1.0) / n;
        let rel = |lhs: f64, rhs: f64| {
            let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
            (lhs - rhs).abs() / scale
        };
        let (a, b, beta, delta) = (self.alpha, self.b, self.beta, self.delta);
        [
            rel(a * a + beta * beta, 2.0),
            rel(b * b + beta * beta, lambda),
            rel(1.0 / (a * a), lambda),
            rel((n - 1.0) * b, 1.0 / a),
            rel(n * b, a),
            // δ and β vanish together at N = 2
            if beta == 0.0 && delta == 0.0 {
                0.0
            } else {
                rel(delta, beta / a)
            },
            rel(1.0 + delta * delta, 2.0 * lambda),
        ]
    }
}

pub fn to_scaled(p: &PhysicalParams) -> Result<ScaledParams> {
    p.validate()?;
    let lambda = p.lambda();
    let gamma = p.gamma();
    Ok(ScaledParams {
        mu: p.mass * p.range / (2.0 * lambda).sqrt(),
        nu: gamma.sqrt() * p.coupling * p.range / 2.0,
        lambda,
        gamma,
    })
}

/// Inverse of the energy scaling: `E = 2√γ·e/a`.
pub fn energy_from_scaled(e: f64, p: &PhysicalParams) -> f64 {
    2.0 * p.gamma().sqrt() * e / p.range
}

/// Forward energy scaling: `e = E·a/(2√γ)`.
pub fn energy_to_scaled(energy: f64, p: &PhysicalParams) -> f64 {
    energy * p.range / (2.0 * p.gamma().sqrt())
}

pub fn jacobi_constants(n_particles: u64) -> Result<JacobiConstants> {
    if n_particles < 2 {
        return Err(Error::InvalidParameter(format!(
            "n_particles must be at least 2, got {n_particles}"
        )));
    }
    let n = n_particles as f64;
    Ok(JacobiConstants {
        alpha: (n / (n - 1.0)).sqrt(),
        beta: ((n - 2.0) / (n - 1.0)).sqrt(),
        b: 1.0 / (n * (n - 1.0)).sqrt(),
        delta: ((n - 2.0) / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn two_particles_unit_scale() {
        let p = PhysicalParams::new(2, 1.0, 1.0, 4.0).unwrap();
        let s = to_scaled(&p).unwrap();
        assert!(close(s.mu, 1.0, 1e-15));
        assert!(close(s.nu, 2.0, 1e-15));
        assert_eq!(s.lambda, 0.5);
        assert_eq!(s.gamma, 1.0);
    }

    #[test]
    fn massless_ten_particles() {
        let p = PhysicalParams::new(10, 0.0, 3.0, 1.0).unwrap();
        let s = to_scaled(&p).unwrap();
        assert_eq!(s.mu, 0.0);
        assert!(close(s.nu, 3.0 * 45f64.sqrt() / 2.0, 1e-15));
        assert!(close(s.lambda, 0.9, 1e-15));
        assert_eq!(s.gamma, 45.0);
    }

    #[test]
    fn three_particles_matches_resubstitution() {
        let p = PhysicalParams::new(3, 2.0, 1.0, 1.0).unwrap();
        let s = to_scaled(&p).unwrap();
        // λ = 2/3, γ = 3
        assert!(close(s.mu, 3f64.sqrt(), 1e-15));
        assert!(close(s.nu, 3f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn rejects_single_particle() {
        assert!(PhysicalParams::new(1, 1.0, 1.0, 1.0).is_err());
        let p = PhysicalParams {
            n_particles: 1,
            mass: 1.0,
            range: 1.0,
            coupling: 1.0,
        };
        assert!(to_scaled(&p).is_err());
        assert!(jacobi_constants(1).is_err());
        assert!(jacobi_constants(0).is_err());
    }

    #[test]
    fn energy_maps() {
        let p = PhysicalParams::new(2, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(energy_from_scaled(0.0, &p), 0.0);
        assert!(close(energy_from_scaled(1.0, &p), 2.0, 1e-15));
        assert!(close(energy_from_scaled(0.980384, &p), 1.960768, 1e-15));
        let q = PhysicalParams::new(17, 0.3, 2.5, 0.1).unwrap();
        let e = -0.731;
        assert!(close(energy_to_scaled(energy_from_scaled(e, &q), &q), e, 1e-14));
    }

    #[test]
    fn jacobi_small_cases() {
        let c = jacobi_constants(2).unwrap();
        assert!(close(c.alpha, 2f64.sqrt(), 1e-15));
        assert_eq!(c.beta, 0.0);
        assert!(close(c.b, 0.5f64.sqrt(), 1e-15));
        assert_eq!(c.delta, 0.0);

        let c = jacobi_constants(3).unwrap();
        assert!(close(c.alpha, 1.5f64.sqrt(), 1e-15));
        assert!(close(c.beta, 0.5f64.sqrt(), 1e-15));
        assert!(close(c.b, 1.0 / 6f64.sqrt(), 1e-15));
        assert!(close(c.delta, 1.0 / 3f64.sqrt(), 1e-15));
    }

    #[test]
    fn jacobi_identities_n100() {
        let c = jacobi_constants(100).unwrap();
        for r in c.identity_residuals(100) {
            assert!(r <= 1e-14, "residual {r}");
        }
    }

    #[test]
    fn mu_between_heavy_and_light_limits() {
        let (m, a) = (1.3, 0.7);
        let mut last_mu = f64::INFINITY;
        let mut last_lambda = 0.0;
        for n in [2u64, 3, 5, 10, 100, 10_000, 1_000_000] {
            let s = to_scaled(&PhysicalParams::new(n, m, a, 1.0).unwrap()).unwrap();
            assert!(s.lambda > last_lambda && s.lambda < 1.0);
            assert!(s.mu < last_mu);
            assert!(s.mu <= m * a * (1.0 + 1e-15));
            assert!(s.mu >= m * a / 2f64.sqrt() * (1.0 - 1e-15));
            last_mu = s.mu;
            last_lambda = s.lambda;
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn jacobi_identities_hold(n in 2u64..=1_000_000) {
                let c = jacobi_constants(n).unwrap();
                for r in c.identity_residuals(n) {
                    prop_assert!(r <= 1e-13, "n={} residual {}", n, r);
                }
            }

            #[test]
            fn energy_round_trip(n in 2u64..10_000, a in 0.01f64..100.0, e in -10.0f64..10.0) {
                let p = PhysicalParams::new(n, 1.0, a, 1.0).unwrap();
                let back = energy_to_scaled(energy_from_scaled(e, &p), &p);
                prop_assert!((back - e).abs() <= 1e-14 * e.abs().max(1e-300) + 1e-300);
            }
        }
    }
}
