//! Numerov shooting on a uniform grid `r_i = i·h`, `i = 0..=n`, for
//! `u'' = (W − ε) u` with `u(0) = 0` and, for `ε < 0`, the decaying
//! exponential continued past `r_max` where `W` has died out.

const RESCALE_ABOVE: f64 = 1e150;

/// Converged eigenpair on one grid.
#[derive(Debug, Clone)]
pub(crate) struct GridEigen {
    pub epsilon: f64,
    pub u: Vec<f64>,
}

/// Numerov weights `g_i = 1 − h²(W_i − ε)/12`.
fn weights(w: &[f64], epsilon: f64, h: f64, out: &mut Vec<f64>) {
    let c = h * h / 12.0;
    out.clear();
    out.extend(w.iter().map(|&wi| 1.0 - c * (wi - epsilon)));
}

/// Integrates outward from the origin up to index `end` (inclusive) and
/// returns the number of sign changes on `(0, end]`.
fn outward(g: &[f64], h: f64, end: usize, u: &mut [f64]) -> usize {
    u[0] = 0.0;
    u[1] = h;
    let mut nodes = 0;
    for i in 1..end {
        let next = ((12.0 - 10.0 * g[i]) * u[i] - g[i - 1] * u[i - 1]) / g[i + 1];
        u[i + 1] = next;
        if next.abs() > RESCALE_ABOVE {
            let s = 1.0 / next.abs();
            for v in &mut u[..=i + 1] {
                *v *= s;
            }
        }
        if u[i + 1].signum() != u[i].signum() && u[i] != 0.0 {
            nodes += 1;
        }
    }
    nodes
}

/// Ratio `u_{i+1}/u_i < 1` of the decaying Numerov solution for a
/// constant weight `g` (classically forbidden, so `g > 1`).
fn decay_ratio(g: f64) -> f64 {
    let c = (12.0 - 10.0 * g) / g;
    // smaller root of ρ² − cρ + 1 = 0, written without cancellation
    2.0 / (c.abs() + (c * c - 4.0).sqrt())
}

/// Integrates inward from the decaying tail at `r_max` down to index
/// `start` (inclusive). Returns the tail ratio `ρ = u_{n}/u_{n−1}`.
fn inward(g: &[f64], start: usize, u: &mut [f64]) -> f64 {
    let n = g.len() - 1;
    let rho = decay_ratio(g[n]);
    u[n] = rho;
    u[n - 1] = 1.0;
    let mut i = n - 1;
    while i > start {
        let prev = ((12.0 - 10.0 * g[i]) * u[i] - g[i + 1] * u[i + 1]) / g[i - 1];
        u[i - 1] = prev;
        if prev.abs() > RESCALE_ABOVE {
            let s = 1.0 / prev.abs();
            for v in &mut u[i - 1..] {
                *v *= s;
            }
        }
        i -= 1;
    }
    rho
}

/// Composite Simpson rule on a uniform grid with an even number of intervals.
pub(crate) fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n.is_multiple_of(2));
    let mut s = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

/// Lowest eigenpair below `upper < 0`, or `None` if there is none.
///
/// Each pass integrates outward to the outermost classical turning point
/// and inward from the exponential tail, matches the two pieces, and
/// corrects ε by the Rayleigh quotient of the matched function, whose
/// only defect is the derivative jump at the matching point. Passes whose
/// outward solution has a node shrink the bracket instead.
///
/// `tol` is absolute. The returned `u` is normalised over `(0, ∞)`
/// including the tail.
pub(crate) fn lowest_eigen(w: &[f64], h: f64, upper: f64, guess: Option<f64>, tol: f64) -> Option<GridEigen> {
    debug_assert!(upper < 0.0);
    let n = w.len() - 1;
    let mut lo = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut hi = upper;
    if !(lo < hi) {
        return None;
    }
    let mut e = match guess {
        Some(x) if x > lo && x < hi => x,
        _ => 0.5 * (lo + hi),
    };

    let mut g = Vec::with_capacity(n + 1);
    let mut u = vec![0.0; n + 1];
    let mut squares = vec![0.0; n + 1];
    for _ in 0..400 {
        if hi - lo <= 4.0 * f64::EPSILON * e.abs() {
            break;
        }
        weights(w, e, h, &mut g);
        let turning = (1..n).rev().find(|&i| w[i] < e);
        let m = match turning {
            Some(i) => i.clamp(2, n - 2),
            None => {
                lo = e;
                e = 0.5 * (lo + hi);
                continue;
            }
        };
        let nodes = outward(&g, h, m + 1, &mut u);
        if nodes > 0 {
            hi = e;
            e = 0.5 * (lo + hi);
            continue;
        }
        let um = u[m];
        let um_minus = u[m - 1];
        let rho = inward(&g, m, &mut u);
        let scale = um / u[m];
        for v in &mut u[m..] {
            *v *= scale;
        }
        u[m] = um;
        for (s, v) in squares.iter_mut().zip(&u) {
            *s = v * v;
        }
        let kappa = -rho.ln() / h;
        let norm = simpson(&squares, h) + u[n] * u[n] / (2.0 * kappa);
        let residual = g[m - 1] * um_minus + g[m + 1] * u[m + 1] - (12.0 - 10.0 * g[m]) * um;
        let de = -(residual / h) * um / norm;
        if de > 0.0 {
            lo = e;
        } else {
            hi = e;
        }
        // the bracket test catches the roundoff floor of `de`
        if de.abs() <= tol || hi - lo <= tol {
            let s = norm.sqrt().recip() * um.signum();
            u.iter_mut().for_each(|v| *v *= s);
            return Some(GridEigen {
                epsilon: if de.abs() <= tol { e + de } else { e },
                u,
            });
        }
        let next = e + de;
        e = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
    }
    None
}

/// Number of bound states below `-kappa²` on `(0, ∞)`, from the outward
/// solution at `ε = −κ²` on `[0, r_end]`, assuming `W ≈ 0` beyond `r_end`.
/// A final node beyond `r_end` is detected from the growing-exponential
/// component of the tail.
pub(crate) fn count_below(w: &[f64], h: f64, kappa: f64) -> usize {
    let n = w.len() - 1;
    let epsilon = -kappa * kappa;
    let mut g = Vec::with_capacity(n + 1);
    weights(w, epsilon, h, &mut g);
    let mut u = vec![0.0; n + 1];
    let mut nodes = outward(&g, h, n, &mut u);
    let growing = u[n] - u[n - 1] * decay_ratio(g[n]);
    if growing * u[n] < 0.0 {
        nodes += 1;
    }
    nodes
}
