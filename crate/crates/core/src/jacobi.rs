//! The orthogonal Jacobi matrix `B` mapping particle coordinates to the
//! centre of mass and N−1 relative coordinates, and the coefficient
//! identities that make `⟨π_i·π_j⟩ = δ_ij⟨π₂²⟩` hold for any boson state.
//!
//! Rows are 0-based here: row 0 is the centre-of-mass row, row `k ≥ 1`
//! is the Jacobi coordinate usually labelled `k+1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest size stored densely. Larger matrices evaluate entries on demand.
pub const DENSE_LIMIT: usize = 10_000;

#[derive(Debug, Clone)]
pub struct JacobiMatrix {
    n: usize,
    dense: Option<Vec<f64>>,
}

/// Maximum deviations of the coefficient identities over rows `i, j ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppendixReport {
    /// `max |Σ_k B_ik B_jk − δ_ij|`
    pub diagonal_sum: f64,
    /// `max |Σ_{k≠l} B_ik B_jl + δ_ij|`
    pub cross_sum: f64,
}

/// Entry `B[row][col]` of the N×N Jacobi matrix, computed from the row pattern.
pub fn jacobi_entry(n: usize, row: usize, col: usize) -> f64 {
    if row == 0 {
        return 1.0 / (n as f64).sqrt();
    }
    // 1-based row index k = row + 1 has k−1 leading equal entries
    let k = (row + 1) as f64;
    if col < row {
        1.0 / (k * (k - 1.0)).sqrt()
    } else if col == row {
        // −√((k−1)/k), written so that it cancels the leading entries exactly
        -(k - 1.0) / (k * (k - 1.0)).sqrt()
    } else {
        0.0
    }
}

pub fn build_jacobi_matrix(n: usize) -> Result<JacobiMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("Jacobi matrix needs n >= 2, got {n}")));
    }
    let dense = (n <= DENSE_LIMIT).then(|| {
        let mut m = vec![0.0; n * n];
        for row in 0..n {
            for col in 0..n {
                m[row * n + col] = jacobi_entry(n, row, col);
            }
        }
        m
    });
    Ok(JacobiMatrix { n, dense })
}

impl JacobiMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        match &self.dense {
            Some(m) => m[row * self.n + col],
            None => jacobi_entry(self.n, row, col),
        }
    }

    pub fn row(&self, row: usize) -> Vec<f64> {
        (0..self.n).map(|c| self.get(row, c)).collect()
    }

    fn row_sum(&self, row: usize) -> f64 {
        (0..self.n).map(|c| self.get(row, c)).sum()
    }

    fn row_dot(&self, i: usize, j: usize) -> f64 {
        (0..self.n).map(|c| self.get(i, c) * self.get(j, c)).sum()
    }

    /// `max |(BᵀB)_ij − δ_ij|`.
    pub fn orthogonality_deviation(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// `max_{i≥1} |Σ_k B_ik|`: every relative row is orthogonal to the
/// centre-of-mass row.
pub fn verify_row_sum_identity(b: &JacobiMatrix) -> f64 {
    (1..b.n()).map(|i| b.row_sum(i).abs()).fold(0.0, f64::max)
}

/// Coefficient form of the expectation identity: both coefficients in
/// `⟨π_i·π_j⟩ = c₁⟨p₁²⟩ + c₂⟨p₁·p₂⟩` reduce to `±δ_ij`.
///
/// The cross sum is evaluated as `(Σ_k B_ik)(Σ_l B_jl) − Σ_k B_ik B_jk`.
pub fn verify_appendix_coefficients(b: &JacobiMatrix) -> AppendixReport {
    let n = b.n();
    let sums: Vec<f64> = (0..n).map(|i| b.row_sum(i)).collect();
    let mut report = AppendixReport {
        diagonal_sum: 0.0,
        cross_sum: 0.0,
    };
    for i in 1..n {
        for j in i..n {
            let kron = if i == j { 1.0 } else { 0.0 };
            let dot = b.row_dot(i, j);
            let cross = sums[i] * sums[j] - dot;
            report.diagonal_sum = report.diagonal_sum.max((dot - kron).abs());
            report.cross_sum = report.cross_sum.max((cross + kron).abs());
        }
    }
    report
}
