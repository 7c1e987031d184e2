//! Symmetric eigensolvers.
//!
//! Cyclic Jacobi is used whenever eigenvectors are needed and for small
//! matrices. Eigenvalue-only requests above [`JACOBI_MAX_VALUES_ONLY`] go
//! through Householder tridiagonalization and implicit QL, which is what the
//! 2N×2N real embeddings of multi-qubit states need.

use super::dense::{GenMatrix, SymMatrix};

/// Largest size for which eigenvalue-only requests still use Jacobi.
pub const JACOBI_MAX_VALUES_ONLY: usize = 16;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `a = vectors · diag(values) · vectorsᵀ`.
#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector of `values[k]`.
    pub vectors: GenMatrix,
}

impl SymEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::INFINITY)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// Cyclic Jacobi eigen-decomposition.
pub fn sym_eigen(s: &SymMatrix) -> SymEigen {
    let n = s.n();
    let mut a = s.to_general();
    let mut v = GenMatrix::identity(n);
    let total = a.frobenius_sq();
    let floor = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off <= floor {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = GenMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    SymEigen { values, vectors }
}

/// Ascending eigenvalues.
pub fn sym_eigenvalues(s: &SymMatrix) -> Vec<f64> {
    if s.n() <= JACOBI_MAX_VALUES_ONLY {
        sym_eigen(s).values
    } else {
        tridiagonal_ql(s)
    }
}

pub fn min_eigenvalue(s: &SymMatrix) -> f64 {
    sym_eigenvalues(s).first().copied().unwrap_or(f64::INFINITY)
}

fn pythag(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Householder reduction to tridiagonal form followed by implicit QL with
/// Wilkinson-style shifts. Eigenvalues only, ascending.
pub fn tridiagonal_ql(s: &SymMatrix) -> Vec<f64> {
    let n = s.n();
    if n == 0 {
        return Vec::new();
    }
    // One-based working arrays keep the classic index arithmetic readable.
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            a[i][j] = s.get(i - 1, j - 1);
        }
    }
    let mut d = vec![0.0; n + 1];
    let mut e = vec![0.0; n + 1];

    for i in (2..=n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 1 {
            let scale: f64 = (1..=l).map(|k| a[i][k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 1..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f = 0.0;
                for j in 1..=l {
                    let mut g = 0.0;
                    for k in 1..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 1..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 1..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for i in 1..=n {
        d[i] = a[i][i];
    }

    for i in 2..=n {
        e[i - 1] = e[i];
    }
    e[n] = 0.0;
    for l in 1..=n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = pythag(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m - 1;
            let mut early = false;
            loop {
                let f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    break;
                }
                i -= 1;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut values: Vec<f64> = d[1..].to_vec();
    values.sort_by(f64::total_cmp);
    values
}
