use serde::Serialize;

use crate::matan::sphere::ascend;
use crate::matan::GenMatrix;
use crate::rng::{substream, unit_vec};

pub const DEFAULT_MAP_RESTARTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub inside: bool,
    /// Signed distance-like margin; `≥ 0` iff inside.
    pub margin: f64,
}

impl Membership {
    fn from_margin(margin: f64) -> Self {
        Self { inside: margin >= 0.0, margin }
    }
}

/// `x_0 − |(x_1, …, x_{n−1})|`.
pub fn lorentz_contains(x: &[f64]) -> Membership {
    debug_assert!(x.len() >= 2);
    let tail = x[1..].iter().map(|t| t * t).sum::<f64>().sqrt();
    Membership::from_margin(x[0] - tail)
}

#[derive(Clone, Debug)]
pub struct MapPositivity {
    /// Smallest Lorentz margin of `M(1, u)` or `Mᵀ(1, u)` found over unit `u`.
    pub worst_margin: f64,
    pub argmin: Vec<f64>,
    pub transposed: bool,
}

impl MapPositivity {
    pub fn positive(&self) -> bool {
        self.worst_margin >= 0.0
    }
}

/// Smallest margin of `M(1, u)` over unit `u` (multi-start), with its argmin.
fn min_ray_margin(m: &GenMatrix, restarts: usize, seed: u64) -> (f64, Vec<f64>) {
    let n = m.rows();
    let d = m.cols() - 1;
    let col0 = m.column(0);
    let objective = |u: &[f64]| {
        // y = M (1, u)
        let y: Vec<f64> = (0..n).map(|r| col0[r] + (0..d).map(|c| m[(r, c + 1)] * u[c]).sum::<f64>()).collect();
        let tail = y[1..].iter().map(|t| t * t).sum::<f64>().sqrt();
        let mut grad = vec![0.0; d];
        for (c, g) in grad.iter_mut().enumerate() {
            let mut dtail = 0.0;
            if tail > 0.0 {
                dtail = (1..n).map(|r| y[r] * m[(r, c + 1)]).sum::<f64>() / tail;
            }
            // ascend maximizes, so negate the margin
            *g = -(m[(0, c + 1)] - dtail);
        }
        (-(y[0] - tail), grad)
    };
    let mut best = (f64::INFINITY, Vec::new());
    for r in 0..restarts.max(1) {
        let start = unit_vec(&mut substream(seed, r as u64), d);
        let res = ascend(objective, start);
        if -res.value < best.0 {
            best = (-res.value, res.point);
        }
    }
    best
}

/// Best-effort test of `M ∈ P_n`, i.e. `M[L_n] ⊂ L_n`, by minimizing the
/// Lorentz margin of `M(1, u)` over the extreme rays `(1, u)`. The transpose
/// is checked too, since `M` and `Mᵀ` are positive together.
pub fn lorentz_map_positive(m: &GenMatrix, restarts: usize, seed: u64) -> MapPositivity {
    assert!(m.is_square() && m.rows() >= 2, "map must be square of size ≥ 2");
    let (direct, du) = min_ray_margin(m, restarts, seed);
    let (trans, tu) = min_ray_margin(&m.transpose(), restarts, seed.wrapping_add(1));
    if trans < direct {
        MapPositivity { worst_margin: trans, argmin: tu, transposed: true }
    } else {
        MapPositivity { worst_margin: direct, argmin: du, transposed: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert_eq!(lorentz_contains(&[1.0, 0.0, 0.0, 0.0]).margin, 1.0);
        assert_eq!(lorentz_contains(&[1.0, 1.0, 0.0, 0.0]).margin, 0.0);
        let m = lorentz_contains(&[1.0, 0.6, 0.8, 0.0]);
        assert!(m.margin.abs() < 1e-15);
        assert!(!lorentz_contains(&[1.0, 1.0, 1.0]).inside);
    }

    #[test]
    fn identity_and_reflection_are_positive() {
        let id = lorentz_map_positive(&GenMatrix::identity(4), 8, 1);
        assert!(id.worst_margin.abs() < 1e-12);
        let d = lorentz_map_positive(&GenMatrix::diag(&[1.0, -1.0, -1.0, -1.0]), 8, 2);
        assert!(d.worst_margin.abs() < 1e-12);
    }

    #[test]
    fn rank_one_map_is_not_positive() {
        // M = 2 e0 e1ᵀ sends (1, u) to (2 u_1, 0, 0, 0); worst at u = −e1.
        let mut m = GenMatrix::zeros(4, 4);
        m[(0, 1)] = 2.0;
        let r = lorentz_map_positive(&m, 8, 3);
        assert!((r.worst_margin + 2.0).abs() < 1e-9);
        assert!(!r.positive());
    }
}
