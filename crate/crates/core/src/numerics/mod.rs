//! Small dense linear algebra and deterministic minimization.
//!
//! Everything here is sized for the problems in this crate: 2x2 to 4x4 density
//! matrices, 3x3 Fisher matrices, Toeplitz determinants up to 16x16, and exact
//! diagonalization blocks up to 256x256.

mod eigen;
mod matrix;
mod minimize;

pub use eigen::{hermitian_eig, EigenSystem};
pub use matrix::{ComplexMatrix, HermitianMatrix, HERMITIAN_TOL};
pub use minimize::{golden_section, minimize_2d, Minimum2d, PHI_POINTS, THETA_POINTS};

use crate::error::{Error, Result};

/// Largest matrix accepted by [`determinant`].
pub const MAX_DET_DIM: usize = 64;

/// Determinant of a square real matrix given as rows.
///
/// Dimensions 1 and 2 are evaluated exactly; larger ones by Gaussian
/// elimination with partial pivoting.
pub fn determinant(rows: &[Vec<f64>]) -> Result<f64> {
    let n = rows.len();
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::validation(format!(
            "determinant needs a square matrix: row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    if n > MAX_DET_DIM {
        return Err(Error::validation(format!(
            "determinant dimension {n} exceeds {MAX_DET_DIM}"
        )));
    }
    match n {
        0 => Ok(1.0),
        1 => Ok(rows[0][0]),
        2 => Ok(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]),
        _ => {
            let mut a: Vec<Vec<f64>> = rows.to_vec();
            let mut det = 1.0;
            for col in 0..n {
                let pivot = (col..n)
                    .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                    .unwrap();
                if a[pivot][col] == 0.0 {
                    return Ok(0.0);
                }
                if pivot != col {
                    a.swap(pivot, col);
                    det = -det;
                }
                let p = a[col][col];
                det *= p;
                for r in col + 1..n {
                    let factor = a[r][col] / p;
                    if factor != 0.0 {
                        for c in col..n {
                            a[r][c] -= factor * a[col][c];
                        }
                    }
                }
            }
            Ok(det)
        }
    }
}

/// First derivative of uniformly spaced samples.
///
/// Interior points use the central difference, the two endpoints one-sided
/// first-order differences.
pub fn central_difference(samples: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = samples.len();
    if n < 3 {
        return Err(Error::validation(format!(
            "central difference needs at least 3 samples, got {n}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::validation(format!("grid step must be positive, got {h}")));
    }
    let mut out = Vec::with_capacity(n);
    out.push((samples[1] - samples[0]) / h);
    out.extend(samples.windows(3).map(|w| (w[2] - w[0]) / (2.0 * h)));
    out.push((samples[n - 1] - samples[n - 2]) / h);
    Ok(out)
}
