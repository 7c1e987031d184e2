//! Shifted matrix pencils `σ_max(M0 + Σ x_k M_k) ≤ 1 + x·v` on the unit sphere.

use super::dense::GenMatrix;
use super::sphere::ascend;
use super::svd::svd;
use crate::error::{Error, Result};
use crate::rng::{substream, unit_vec};

pub const DEFAULT_RESTARTS: usize = 64;

/// A shift vector `v ∈ R^m` together with `M_0, …, M_m`, all `n×n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPencil {
    n: usize,
    v: Vec<f64>,
    mats: Vec<GenMatrix>,
}

impl MatrixPencil {
    /// `mats[0]` is the constant term; `mats.len()` must be `v.len() + 1`.
    pub fn new(v: Vec<f64>, mats: Vec<GenMatrix>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::OutOfRange("pencil needs at least one parameter".into()));
        }
        if mats.len() != v.len() + 1 {
            return Err(Error::DimensionMismatch(format!("{} matrices for {} parameters", mats.len(), v.len())));
        }
        let n = mats[0].rows();
        if mats.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::DimensionMismatch("pencil matrices must share one square size".into()));
        }
        if v.iter().any(|x| !x.is_finite()) || mats.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, v, mats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.v.len()
    }

    pub fn shift(&self) -> &[f64] {
        &self.v
    }

    pub fn mats(&self) -> &[GenMatrix] {
        &self.mats
    }

    pub fn shift_norm(&self) -> f64 {
        self.v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `|M_0|² + Σ_k |M_k|²` (Frobenius).
    pub fn mass(&self) -> f64 {
        self.mats.iter().map(GenMatrix::frobenius_sq).sum()
    }

    pub fn eval(&self, x: &[f64]) -> GenMatrix {
        let mut out = self.mats[0].clone();
        for (xk, mk) in x.iter().zip(&self.mats[1..]) {
            out.axpy(*xk, mk);
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { n: self.n, v: self.v.clone(), mats: self.mats.iter().map(|m| m.scale(s)).collect() }
    }

    /// `σ_max(M(x))` and its gradient in `x` (from the top singular pair).
    fn sigma_max_with_grad(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let m = self.eval(x);
        let s = svd(&m).expect("finite pencil");
        let u = s.u.column(0);
        let w = s.v.column(0);
        let grad = self.mats[1..]
            .iter()
            .map(|mk| {
                let mw = mk.matvec(&w);
                u.iter().zip(&mw).map(|(a, b)| a * b).sum()
            })
            .collect();
        (s.sigma_max(), grad)
    }

    fn margin_with_grad(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let (s, mut g) = self.sigma_max_with_grad(x);
        let xv: f64 = x.iter().zip(&self.v).map(|(a, b)| a * b).sum();
        g.iter_mut().zip(&self.v).for_each(|(gi, vi)| *gi -= vi);
        (s - 1.0 - xv, g)
    }

    /// `σ_max(M(x)) − (1 + x·v)` at one point.
    pub fn margin_at(&self, x: &[f64]) -> f64 {
        self.margin_with_grad(x).0
    }
}

#[derive(Clone, Debug)]
pub struct PencilMargin {
    /// Largest `σ_max(M(x)) − (1 + x·v)` found. A lower bound on the supremum.
    pub worst: f64,
    pub argmax: Vec<f64>,
}

/// Multi-start projected-gradient maximization of the pencil violation over
/// unit `x`. `worst ≤ 0` means the pencil condition held everywhere we looked.
pub fn pencil_margin(p: &MatrixPencil, restarts: usize, seed: u64) -> PencilMargin {
    let mut best = PencilMargin { worst: f64::NEG_INFINITY, argmax: Vec::new() };
    for r in 0..restarts.max(1) {
        let start = unit_vec(&mut substream(seed, r as u64), p.m());
        let res = ascend(|x| p.margin_with_grad(x), start);
        if res.value > best.worst {
            best = PencilMargin { worst: res.value, argmax: res.point };
        }
    }
    best
}

/// Largest `σ_max(M(x)) / (1 + x·v)` found over unit `x`; requires `|v| < 1`.
///
/// Dividing the matrices by this gain yields a pencil sitting on the
/// boundary of the constraint, which is how test pencils are manufactured.
pub fn pencil_gain(p: &MatrixPencil, restarts: usize, seed: u64) -> Result<f64> {
    if p.shift_norm() >= 1.0 {
        return Err(Error::OutOfRange(format!("|v| = {} must be < 1", p.shift_norm())));
    }
    let objective = |x: &[f64]| {
        let (s, gs) = p.sigma_max_with_grad(x);
        let d = 1.0 + x.iter().zip(&p.v).map(|(a, b)| a * b).sum::<f64>();
        let g = gs.iter().zip(&p.v).map(|(gsi, vi)| (gsi * d - s * vi) / (d * d)).collect();
        (s / d, g)
    };
    let mut best = 0.0f64;
    for r in 0..restarts.max(1) {
        let start = unit_vec(&mut substream(seed, r as u64), p.m());
        best = best.max(ascend(objective, start).value);
    }
    Ok(best)
}

/// Norm bound for any `n`, two parameters: `2n − (1 − |v|²)(n mod 2)`.
pub fn m012_bound(n: usize, vnorm: f64) -> f64 {
    2.0 * n as f64 - (1.0 - vnorm * vnorm) * (n % 2) as f64
}

/// Norm bound for odd `n` and `m ≥ 2` parameters:
/// `2n − (1 − |v|²) + (m − 2)(n − 1)(1 − |v|²)`.
pub fn pencil_norm_bound(n: usize, m: usize, vnorm: f64) -> Result<f64> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} < 2")));
    }
    if !(0.0..=1.0).contains(&vnorm) {
        return Err(Error::OutOfRange(format!("|v| = {vnorm} outside [0, 1]")));
    }
    let slack = 1.0 - vnorm * vnorm;
    Ok(2.0 * n as f64 - slack + ((m - 2) * (n - 1)) as f64 * slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_bound_values() {
        assert_eq!(pencil_norm_bound(3, 3, 0.0).unwrap(), 7.0);
        assert_eq!(pencil_norm_bound(3, 3, 1.0).unwrap(), 6.0);
        assert_eq!(pencil_norm_bound(3, 2, 0.0).unwrap(), 5.0);
        assert_eq!(m012_bound(3, 0.0), 5.0);
        assert_eq!(m012_bound(4, 0.3), 8.0);
        assert_eq!(pencil_norm_bound(4, 3, 0.0), Err(Error::EvenSize(4)));
        assert!(pencil_norm_bound(3, 1, 0.0).is_err());
        assert!(pencil_norm_bound(3, 2, 1.5).is_err());
    }

    #[test]
    fn zero_pencil_margin_is_minus_one() {
        let p = MatrixPencil::new(vec![0.0, 0.0], vec![GenMatrix::zeros(3, 3); 3]).unwrap();
        let r = pencil_margin(&p, 4, 0);
        assert!((r.worst + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_pencil_follows_shift() {
        // All M_k = 0: margin is −1 − x·v, maximized at x = −v/|v|.
        let p = MatrixPencil::new(vec![0.3, 0.4], vec![GenMatrix::zeros(2, 2); 3]).unwrap();
        let r = pencil_margin(&p, 8, 1);
        assert!((r.worst - (-1.0 + 0.5)).abs() < 1e-10);
    }

    #[test]
    fn constructor_validation() {
        assert!(MatrixPencil::new(vec![], vec![GenMatrix::zeros(2, 2)]).is_err());
        assert!(MatrixPencil::new(vec![0.0], vec![GenMatrix::zeros(2, 2)]).is_err());
        assert!(MatrixPencil::new(vec![0.0], vec![GenMatrix::zeros(2, 2), GenMatrix::zeros(3, 3)]).is_err());
        assert_eq!(
            MatrixPencil::new(vec![f64::NAN], vec![GenMatrix::zeros(2, 2); 2]).unwrap_err(),
            Error::NonFinite
        );
    }

    #[test]
    fn gain_rescaling_lands_on_boundary() {
        let m1 = GenMatrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let m2 = GenMatrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.5]]);
        let p = MatrixPencil::new(vec![0.2, -0.1], vec![GenMatrix::identity(2).scale(0.3), m1, m2]).unwrap();
        let gain = pencil_gain(&p, 16, 3).unwrap();
        let q = p.scaled(1.0 / gain);
        assert!(pencil_margin(&q, 16, 4).worst.abs() < 1e-9);
    }
}
