//! Least-squares quadratic fitting for runtime extrapolation.

use crate::error::{Error, Result};

/// Coefficients of a·n² + b·n + c with the residual sum of squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual: f64,
}

impl QuadraticFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.a * n * n + self.b * n + self.c
    }
}

/// Fit a quadratic through `(n, seconds)` points via the normal
/// equations. Requires at least three distinct n values.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<QuadraticFit> {
    let mut distinct: Vec<f64> = points.iter().map(|(x, _)| *x).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite abscissa"));
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::QuadraticFit(format!(
            "need at least 3 distinct n values, got {}",
            distinct.len()
        )));
    }

    // Normal equations A^T A x = A^T y for the design matrix [n², n, 1].
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(x, y) in points {
        let row = [x * x, x, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let coeffs = solve3(ata, aty)?;
    let fit = QuadraticFit { a: coeffs[0], b: coeffs[1], c: coeffs[2], residual: 0.0 };
    let residual = points.iter().map(|&(x, y)| (y - fit.predict(x)).powi(2)).sum();
    Ok(QuadraticFit { residual, ..fit })
}

/// Gaussian elimination with partial pivoting on a 3×3 system.
fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).expect("finite"))
            .expect("non-empty range");
        if m[pivot][col].abs() < 1e-12 {
            return Err(Error::QuadraticFit("singular normal equations".into()));
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (k, pivot_val) in pivot_row.iter().enumerate().skip(col) {
                m[row][k] -= factor * pivot_val;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}
