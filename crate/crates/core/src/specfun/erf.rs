use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Switch between the power series and the continued fraction.
const SERIES_LIMIT: f64 = 1.0;

/// Scaled complementary error function `e^{x²}·erfc(x)` for `x ≥ 0`.
///
/// Below `x = 1` it is `e^{x²} − e^{x²}·erf(x)` with the all-positive series
/// `e^{x²} erf(x) = (2/√π) Σ 2ⁿ x^{2n+1} / (2n+1)!!`; above, the Laplace
/// continued fraction evaluated by the modified Lentz method.
pub fn erfcx(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "erfcx is defined here for x >= 0, got {x}"
        )));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < SERIES_LIMIT {
        Ok(series(x))
    } else {
        Ok(continued_fraction(x))
    }
}

fn series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = 0.0;
    let mut n = 0.0;
    while term > 1e-18 * sum || n == 0.0 {
        sum += term;
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
    }
    x2.exp() - 2.0 * FRAC_1_SQRT_PI * sum
}

/// `erfcx(x) = 1 / (√π · K)` with `K = x + (1/2)/(x + 1/(x + (3/2)/(x + …)))`.
fn continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..5000 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 2.2e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}
