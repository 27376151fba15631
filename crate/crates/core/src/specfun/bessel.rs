use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument the ascending series is used, above it Temme's
/// continued fraction.
const SERIES_LIMIT: f64 = 2.0;

/// Exponentially scaled modified Bessel function of the second kind,
/// `e^x·K₁(x)`, for `x > 0`.
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bessel_k1_scaled needs x > 0, got {x}"
        )));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= SERIES_LIMIT {
        Ok(x.exp() * k1_series(x))
    } else {
        Ok(k1_scaled_cf(x))
    }
}

/// `K₁(x) = 1/x + ln(x/2)·I₁(x) − (x/4) Σ_k [ψ(k+1) + ψ(k+2)] (x²/4)^k / (k!(k+1)!)`
fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0; // (x²/4)^k / (k!(k+1)!)
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut i1_sum = 0.0;
    let mut psi_sum = 0.0;
    let mut k = 0.0;
    loop {
        let psi_k2 = psi_k1 + 1.0 / (k + 1.0);
        i1_sum += term;
        psi_sum += (psi_k1 + psi_k2) * term;
        k += 1.0;
        term *= q / (k * (k + 1.0));
        psi_k1 = psi_k2;
        if term < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * psi_sum
}

/// Steed's evaluation of Temme's second continued fraction for `K₀`, then
/// `K₁ = K₀ (x + ½ − h)/x`. Converges quickly for `x ≥ 2`.
fn k1_scaled_cf(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0_scaled = (PI / (2.0 * x)).sqrt() / s;
    k0_scaled * (x + 0.5 - h) / x
}
