//! Radius relations between balls and the cones they generate.

use super::exact::Rational;
use crate::error::{Error, Result};

/// A ball of radius `rho` around the unit axis point and the opening
/// parameter `r` of the cone it generates, `r = ρ / √(1 − ρ²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallConeParam {
    pub n: usize,
    pub r: f64,
    pub rho: f64,
}

impl BallConeParam {
    pub fn from_rho(n: usize, rho: f64) -> Result<Self> {
        Ok(Self { n, r: ball_to_cone_param(rho)?, rho })
    }

    pub fn from_r(n: usize, r: f64) -> Result<Self> {
        Ok(Self { n, r, rho: cone_to_ball_param(r)? })
    }
}

pub fn ball_to_cone_param(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::OutOfRange(format!("ball radius {rho} outside (0, 1)")));
    }
    Ok(rho / (1.0 - rho * rho).sqrt())
}

pub fn cone_to_ball_param(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::OutOfRange(format!("cone parameter {r} must be positive")));
    }
    Ok(r / (1.0 + r * r).sqrt())
}

fn check_inclusion_args(n: usize, m: usize, r1: f64, r2: f64) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::OutOfRange(format!("cone dimensions {n}, {m} must be ≥ 2")));
    }
    if !(r1 > 0.0 && r2 > 0.0) || !r1.is_finite() || !r2.is_finite() {
        return Err(Error::OutOfRange(format!("cone parameters {r1}, {r2} must be positive")));
    }
    Ok(())
}

/// Largest `r` with `K_ball^{nm}(r) ⊂ K_ball^n(r1) ⊗ K_ball^m(r2)`:
/// `r⁻² = max{−1 + (1 + r1⁻²)(1 + r2⁻²), (min(n,m) − 1) r1⁻² r2⁻²}`.
pub fn inclusion_radius(n: usize, m: usize, r1: f64, r2: f64) -> Result<f64> {
    check_inclusion_args(n, m, r1, r2)?;
    let a = 1.0 / (r1 * r1);
    let b = 1.0 / (r2 * r2);
    let inv_sq = f64::max(-1.0 + (1.0 + a) * (1.0 + b), (n.min(m) - 1) as f64 * a * b);
    Ok(inv_sq.sqrt().recip())
}

/// Same relation on squared parameters, exactly.
pub fn inclusion_radius_sq_exact(n: usize, m: usize, r1_sq: Rational, r2_sq: Rational) -> Result<Rational> {
    let zero = Rational::from_integer(0);
    if n < 2 || m < 2 || r1_sq <= zero || r2_sq <= zero {
        return Err(Error::OutOfRange("inclusion radius needs n, m ≥ 2 and positive parameters".into()));
    }
    let one = Rational::from_integer(1);
    let a = r1_sq.recip();
    let b = r2_sq.recip();
    let first = (one + a) * (one + b) - one;
    let second = Rational::from_integer((n.min(m) - 1) as i128) * a * b;
    Ok(first.max(second).recip())
}

/// Largest ball around `I_{mn}` inside the separable cone generated by balls
/// of radii `r1` around `I_m` and `r2` around `I_n`:
/// `min(r1 r2, √(mn) r1 r2 / √((min(m², n²) − 1)(m − r1²)(n − r2²) + r1² r2²))`.
pub fn matrix_ball_radius(m: usize, n: usize, r1: f64, r2: f64) -> Result<f64> {
    let (mf, nf) = (m as f64, n as f64);
    if !(r1 > 0.0 && r1 < mf.sqrt()) || !(r2 > 0.0 && r2 < nf.sqrt()) {
        return Err(Error::OutOfRange(format!("radii ({r1}, {r2}) must lie in (0, √{m}) × (0, √{n})")));
    }
    let prod = r1 * r2;
    let k = (m.min(n) * m.min(n) - 1) as f64;
    let denom = (k * (mf - r1 * r1) * (nf - r2 * r2) + prod * prod).sqrt();
    Ok(prod.min((mf * nf).sqrt() * prod / denom))
}
