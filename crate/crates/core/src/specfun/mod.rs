//! Special functions and quadrature used by both energy bounds.
//!
//! Only exponentially scaled forms are exposed: `e^x·K₁(x)` and
//! `e^{x²}·erfc(x)`. The unscaled functions under- or overflow exactly where
//! the variational scan probes narrow trial functions.

mod bessel;
mod erf;
mod quadrature;

pub use bessel::bessel_k1_scaled;
pub use erf::erfcx;
pub use quadrature::{integrate_semiinfinite, integrate_tanh_sinh, QuadratureSpec};

/// `2/√π`
pub const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Gaussian expectation of the relativistic kinetic energy in units of the
/// trial width:
///
/// ```text
/// I(x) = (4/√π) ∫₀^∞ √(2x + t²) e^{−t²} t² dt = (2/√π) x e^x K₁(x)
/// ```
pub fn kinetic_i(x: f64) -> f64 {
    if x == 0.0 {
        return TWO_OVER_SQRT_PI;
    }
    debug_assert!(x > 0.0, "kinetic_i needs x >= 0, got {x}");
    TWO_OVER_SQRT_PI * x * bessel_k1_scaled(x).expect("positive argument")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defining_integral(x: f64) -> f64 {
        let spec = QuadratureSpec::default();
        integrate_semiinfinite(
            |t| 2.0 * TWO_OVER_SQRT_PI * (2.0 * x + t * t).sqrt() * (-t * t).exp() * t * t,
            &spec,
        )
        .unwrap()
    }

    #[test]
    fn zero_argument() {
        assert_eq!(kinetic_i(0.0), 2.0 / std::f64::consts::PI.sqrt());
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let q = defining_integral(1.0);
        assert!((kinetic_i(1.0) - q).abs() / q < 1e-10);
        // mpmath, 40 digits
        assert!((kinetic_i(1.0) - 1.8462015080701545137).abs() < 1e-14);
        assert!((kinetic_i(0.5) - 1.5408072299408867902).abs() < 1e-14);
        assert!((kinetic_i(10.0) - 4.6350044079955617714).abs() < 1e-13);
    }

    #[test]
    fn closed_form_matches_quadrature_log_grid() {
        for k in 0..20 {
            let x = 1e-4 * (50.0f64 / 1e-4).powf(k as f64 / 19.0);
            let q = defining_integral(x);
            let c = kinetic_i(x);
            assert!((c - q).abs() / c <= 1e-9, "x={x} closed={c} quad={q}");
        }
    }

    #[test]
    fn heavy_mass_limit() {
        let s = 1e-3;
        let v = s * kinetic_i(1.0 / (2.0 * s * s));
        assert!((v - 1.0).abs() < 1e-5, "{v}");
    }

    #[test]
    fn increasing_and_concave() {
        let xs: Vec<f64> = (0..400).map(|i| 0.05 * i as f64).collect();
        let v: Vec<f64> = xs.iter().map(|&x| kinetic_i(x)).collect();
        for w in v.windows(3) {
            assert!(w[1] > w[0]);
            // ⟨√(2x + t²)⟩ inherits the concavity of the square root
            assert!(w[2] - 2.0 * w[1] + w[0] < 1e-14, "not concave: {w:?}");
        }
    }
}
