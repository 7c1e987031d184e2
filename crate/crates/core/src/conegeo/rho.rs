//! The multi-qubit separable-ball radius sequence.
//!
//! `ρ_3⁻² = 19/16` and `ρ_k⁻² = (3/2) ρ_{k−1}⁻² − 2^{1−k}`, with closed form
//! `ρ_k = 2^{k/2} / √((17/2) 3^{k−3} + 1)`. The comparison sequence runs the
//! same recursion from `ρ_3² = 4/5` and has closed form
//! `ρ_k² = 2^k / (3^{k−1} + 1)`.

use serde::Serialize;

use super::exact::{pow2, pow3, rat, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoRow {
    pub k: usize,
    pub rho_closed: f64,
    pub rho_recursion: f64,
    /// `ρ_k²` as `"num/den"`, when it fits in 128-bit integers.
    pub rho_sq_exact: Option<String>,
    pub prior_rho: f64,
    pub prior_rho_sq_exact: Option<String>,
    /// `ρ_k / ρ_k^prior`.
    pub radius_ratio: f64,
    /// `ρ_k² / (ρ_k^prior)²`.
    pub squared_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct RhoSequence {
    pub k_max: usize,
    closed: Vec<f64>,
    recursion: Vec<f64>,
    prior: Vec<f64>,
    exact_sq: Vec<Option<Rational>>,
    exact_recursion_sq: Vec<Option<Rational>>,
    prior_exact_sq: Vec<Option<Rational>>,
}

/// `2^{k/2} / √((17/2) 3^{k−3} + 1)`.
pub fn rho_closed_form(k: usize) -> f64 {
    let k = k as f64;
    2f64.powf(k / 2.0) / (8.5 * 3f64.powf(k - 3.0) + 1.0).sqrt()
}

/// `ρ_k² = 2^{k+1} / (17·3^{k−3} + 2)`.
pub fn rho_sq_closed_exact(k: usize) -> Option<Rational> {
    let num = 1i128.checked_shl(u32::try_from(k + 1).ok()?).filter(|_| k + 1 < 127)?;
    let den = pow3(u32::try_from(k - 3).ok()?)?.checked_mul(17)?.checked_add(2)?;
    Some(Rational::new(num, den))
}

/// Comparison sequence `2^k / (3^{k−1} + 1)`.
pub fn prior_rho_sq_exact(k: usize) -> Option<Rational> {
    let num = 1i128.checked_shl(u32::try_from(k).ok()?).filter(|_| k < 127)?;
    let den = pow3(u32::try_from(k - 1).ok()?)?.checked_add(1)?;
    Some(Rational::new(num, den))
}

/// One step `x ↦ (3/2) x − 2^{1−k}` on inverse squared radii, exactly.
fn exact_step(prev_inv_sq: Rational, k: usize) -> Option<Rational> {
    let three_halves = rat(3, 2);
    let a = prev_inv_sq.numer().checked_mul(*three_halves.numer())?;
    let d = prev_inv_sq.denom().checked_mul(*three_halves.denom())?;
    let scaled = Rational::new(a, d);
    let shift = pow2(1 - k as i32)?;
    // Common denominator by hand so overflow is caught instead of panicking.
    let den = scaled.denom().checked_mul(*shift.denom())?;
    let num = scaled.numer().checked_mul(*shift.denom())?.checked_sub(shift.numer().checked_mul(*scaled.denom())?)?;
    Some(Rational::new(num, den))
}

fn run_recursion(seed_inv_sq: Rational, k_max: usize) -> (Vec<f64>, Vec<Option<Rational>>) {
    let mut float = vec![to_f64(&seed_inv_sq)];
    let mut exact = vec![Some(seed_inv_sq)];
    for k in 4..=k_max {
        let prev = *float.last().unwrap();
        float.push(1.5 * prev - 2f64.powi(1 - k as i32));
        let next = exact.last().unwrap().and_then(|p| exact_step(p, k));
        exact.push(next);
    }
    (
        float.into_iter().map(|inv| inv.sqrt().recip()).collect(),
        exact.into_iter().map(|e| e.map(|x| x.recip())).collect(),
    )
}

pub fn rho_sequence(k_max: usize) -> Result<RhoSequence> {
    if k_max < 3 {
        return Err(Error::OutOfRange(format!("k_max = {k_max} < 3")));
    }
    let (recursion, exact_recursion_sq) = run_recursion(rat(19, 16), k_max);
    let (prior, _) = run_recursion(rat(5, 4), k_max);
    let ks = 3..=k_max;
    Ok(RhoSequence {
        k_max,
        closed: ks.clone().map(rho_closed_form).collect(),
        recursion,
        prior,
        exact_sq: ks.clone().map(rho_sq_closed_exact).collect(),
        exact_recursion_sq,
        prior_exact_sq: ks.map(prior_rho_sq_exact).collect(),
    })
}

impl RhoSequence {
    fn idx(&self, k: usize) -> usize {
        assert!((3..=self.k_max).contains(&k), "k = {k} outside 3..={}", self.k_max);
        k - 3
    }

    pub fn rho(&self, k: usize) -> f64 {
        self.closed[self.idx(k)]
    }

    pub fn rho_recursion(&self, k: usize) -> f64 {
        self.recursion[self.idx(k)]
    }

    pub fn prior(&self, k: usize) -> f64 {
        self.prior[self.idx(k)]
    }

    pub fn rho_sq_exact(&self, k: usize) -> Option<Rational> {
        self.exact_sq[self.idx(k)]
    }

    pub fn rho_sq_exact_recursion(&self, k: usize) -> Option<Rational> {
        self.exact_recursion_sq[self.idx(k)]
    }

    pub fn prior_sq_exact(&self, k: usize) -> Option<Rational> {
        self.prior_exact_sq[self.idx(k)]
    }

    /// `ρ_k² / (ρ_k^prior)²`, exactly where representable.
    pub fn squared_ratio_exact(&self, k: usize) -> Option<Rational> {
        Some(self.rho_sq_exact(k)? / self.prior_sq_exact(k)?)
    }

    /// Limit of `ρ_k / ρ_k^prior` as `k → ∞`: `√(18/17)`.
    pub fn asymptotic_radius_ratio() -> f64 {
        (18.0f64 / 17.0).sqrt()
    }

    pub fn rows(&self) -> Vec<RhoRow> {
        (3..=self.k_max)
            .map(|k| {
                let rho = self.rho(k);
                let prior = self.prior(k);
                RhoRow {
                    k,
                    rho_closed: rho,
                    rho_recursion: self.rho_recursion(k),
                    rho_sq_exact: self.rho_sq_exact(k).map(|r| r.to_string()),
                    prior_rho: prior,
                    prior_rho_sq_exact: self.prior_sq_exact(k).map(|r| r.to_string()),
                    radius_ratio: rho / prior,
                    squared_ratio: (rho * rho) / (prior * prior),
                }
            })
            .collect()
    }
}
