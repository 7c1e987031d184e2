//! Spectral identities for 2×2 block matrices.

use super::dense::{GenMatrix, SymMatrix};
use super::eigen::sym_eigen;
use super::svd::singular_values;
use crate::error::{Error, Result};

/// Spectrum of `[[αI, M], [Mᵀ, βI]]` from the singular values of `M`:
/// `(α+β)/2 ± √(((α−β)/2)² + σ_k²)`. Returned in descending order.
pub fn block_spectrum(alpha: f64, beta: f64, m: &GenMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let mid = 0.5 * (alpha + beta);
    let half = 0.5 * (alpha - beta);
    let mut out: Vec<f64> = singular_values(m)?
        .into_iter()
        .flat_map(|s| {
            let r = (half * half + s * s).sqrt();
            [mid + r, mid - r]
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// `Σ λ_k μ_k` over both spectra sorted the same way. Whenever
/// `[[A, C], [Cᵀ, B]] ⪰ 0` this bounds `|C|²` from above.
pub fn trace_pairing_bound(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.n(), b.n())));
    }
    let la = sym_eigen(a).values;
    let lb = sym_eigen(b).values;
    Ok(la.iter().zip(&lb).map(|(x, y)| x * y).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_off_diagonal() {
        assert_eq!(block_spectrum(1.0, 1.0, &GenMatrix::zeros(2, 2)).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn symmetric_case() {
        assert_eq!(block_spectrum(0.0, 0.0, &GenMatrix::identity(2)).unwrap(), vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(block_spectrum(0.0, 0.0, &GenMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn pairing_bound_arithmetic() {
        let n = 4;
        assert_eq!(trace_pairing_bound(&SymMatrix::identity(n), &SymMatrix::identity(n)).unwrap(), n as f64);
        let v = trace_pairing_bound(&SymMatrix::diag(&[2.0, 1.0]), &SymMatrix::diag(&[1.0, 3.0])).unwrap();
        assert!((v - 7.0).abs() < 1e-14);
        assert!(trace_pairing_bound(&SymMatrix::identity(2), &SymMatrix::identity(3)).is_err());
    }
}
