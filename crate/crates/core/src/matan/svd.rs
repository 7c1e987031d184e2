//! One-sided (Hestenes) Jacobi SVD.

use super::dense::GenMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `m = u · diag(singular_values) · vᵀ` with `p = min(rows, cols)`
/// orthonormal columns in both `u` (rows×p) and `v` (cols×p).
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: GenMatrix,
    /// Descending, nonnegative.
    pub singular_values: Vec<f64>,
    pub v: GenMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> GenMatrix {
        let p = self.singular_values.len();
        let us = GenMatrix::from_fn(self.u.rows(), p, |r, c| self.u[(r, c)] * self.singular_values[c]);
        us.matmul(&self.v.transpose())
    }
}

pub fn svd(m: &GenMatrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.rows() < m.cols() {
        let t = svd_tall(&m.transpose());
        return Ok(Svd { u: t.v, singular_values: t.singular_values, v: t.u });
    }
    Ok(svd_tall(m))
}

pub fn singular_values(m: &GenMatrix) -> Result<Vec<f64>> {
    svd(m).map(|s| s.singular_values)
}

fn svd_tall(m: &GenMatrix) -> Svd {
    let rows = m.rows();
    let n = m.cols();
    // Column-major copies make the pairwise column sweeps contiguous.
    let mut cols: Vec<Vec<f64>> = (0..n).map(|c| m.column(c)).collect();
    let mut vcols: Vec<Vec<f64>> = (0..n).map(|c| (0..n).map(|r| if r == c { 1.0 } else { 0.0 }).collect()).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = cols[p].iter().zip(&cols[q]).fold((0.0, 0.0, 0.0), |(a, b, g), (x, y)| {
                    (a + x * x, b + y * y, g + x * y)
                });
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut vcols, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let smax = norms.iter().copied().fold(0.0, f64::max);
    let tiny = smax * (rows as f64) * f64::EPSILON;

    let mut ucols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut svals = Vec::with_capacity(n);
    let mut deficient = Vec::new();
    for (slot, &k) in order.iter().enumerate() {
        if norms[k] > tiny && norms[k] > 0.0 {
            ucols.push(cols[k].iter().map(|x| x / norms[k]).collect());
        } else {
            ucols.push(vec![0.0; rows]);
            deficient.push(slot);
        }
        svals.push(norms[k]);
    }
    complete_basis(&mut ucols, &deficient, rows);

    let u = GenMatrix::from_fn(rows, n, |r, c| ucols[c][r]);
    let v = GenMatrix::from_fn(n, n, |r, c| vcols[order[c]][r]);
    Svd { u, singular_values: svals, v }
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Fills the listed zero columns with unit vectors orthogonal to every other column.
fn complete_basis(cols: &mut [Vec<f64>], slots: &[usize], dim: usize) {
    let mut candidate = 0;
    for &slot in slots {
        while candidate < dim {
            let mut e = vec![0.0; dim];
            e[candidate] = 1.0;
            candidate += 1;
            // Two Gram-Schmidt passes.
            for _ in 0..2 {
                for (k, other) in cols.iter().enumerate() {
                    if k == slot {
                        continue;
                    }
                    let d: f64 = other.iter().zip(&e).map(|(a, b)| a * b).sum();
                    e.iter_mut().zip(other).for_each(|(x, o)| *x -= d * o);
                }
            }
            let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols[slot] = e.into_iter().map(|x| x / norm).collect();
                break;
            }
        }
    }
}
