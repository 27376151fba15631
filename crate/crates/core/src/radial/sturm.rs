//! Second-order finite differences for `−u'' + W u` on interior points
//! `r_i = i·h`, `i = 1..n−1`: a symmetric tridiagonal matrix whose
//! eigenvalue counts come from the Sturm sequence of its LDLᵀ pivots.

/// Number of eigenvalues strictly below `lambda` of the symmetric
/// tridiagonal matrix with the given diagonal and constant off-diagonal.
pub(crate) fn sturm_count(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = diag[0] - lambda;
    for (i, d) in diag.iter().enumerate() {
        if i > 0 {
            let prev = if q == 0.0 { f64::EPSILON * off.abs() } else { q };
            q = (d - lambda) - off2 / prev;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Diagonal of the Dirichlet matrix on `[0, n·h]`.
pub(crate) fn dirichlet_diagonal(w_interior: &[f64], h: f64) -> Vec<f64> {
    let c = 2.0 / (h * h);
    w_interior.iter().map(|&wi| c + wi).collect()
}

/// Lowest eigenvalue by bisection on the Sturm count, or `None` if no
/// eigenvalue lies below `upper`.
pub(crate) fn lowest_by_bisection(diag: &[f64], off: f64, upper: f64, tol: f64) -> Option<f64> {
    if sturm_count(diag, off, upper) == 0 {
        return None;
    }
    // Gershgorin lower bound
    let mut lo = diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();
    let mut hi = upper;
    while hi - lo > tol * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
