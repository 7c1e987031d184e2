//! Ball states `I + r·Δ` around the identity and a search for PPT violations.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::pauli::{from_pauli, PauliCoords};
use super::ppt::{bipartition_subsets, partial_transpose_mask, ppt_bipartitions, subset_mask};
use super::state::{min_eigenpair, psd_margin, QubitState};
use crate::error::{Error, Result};
use crate::rng::{substream, unit_vec};

/// Margins below `−VIOLATION_TOL` count as violations.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Uniform unit-Frobenius Hermitian direction: Gaussian Pauli coordinates,
/// normalized. The Pauli map is an isometry, so this is uniform on the sphere.
pub fn random_direction<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<QubitState> {
    let g = unit_vec(rng, 1 << (2 * m));
    let dir = from_pauli(&PauliCoords::new(m, g)?);
    let n = dir.frobenius_norm();
    Ok(dir.scale(1.0 / n))
}

/// `I + radius·Δ` with `Δ` uniform on the unit Frobenius sphere of Hermitian matrices.
pub fn sample_ball_state<R: Rng + ?Sized>(m: usize, radius: f64, rng: &mut R) -> Result<QubitState> {
    if !(radius >= 0.0) || !radius.is_finite() {
        return Err(Error::OutOfRange(format!("radius {radius}")));
    }
    let id = QubitState::identity(m)?;
    if radius == 0.0 {
        return Ok(id);
    }
    id.add_scaled(radius, &random_direction(m, rng)?)
}

/// Smallest of the PSD margin and every bipartition PPT margin.
pub fn necessary_margin(s: &QubitState) -> Result<f64> {
    Ok(psd_margin(s).min(ppt_bipartitions(s)?.worst))
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationSearch {
    pub m: usize,
    pub radius: f64,
    pub samples: usize,
    /// Uniform samples that are not PSD.
    pub uniform_psd_violations: usize,
    /// Uniform samples with some non-PSD partial transpose.
    pub uniform_ppt_violations: usize,
    pub uniform_worst_margin: f64,
    pub refined_starts: usize,
    /// Refined directions whose state is PSD but fails PPT.
    pub refined_ppt_violations: usize,
    pub refined_worst_margin: f64,
    /// First violating state found, uniform samples first.
    #[serde(skip)]
    pub example: Option<QubitState>,
}

impl ViolationSearch {
    pub fn found(&self) -> bool {
        self.uniform_ppt_violations + self.uniform_psd_violations + self.refined_ppt_violations > 0
    }
}

const REFINE_STEPS: usize = 64;
const REFINE_STEP: f64 = 0.5;

/// Pushes `Δ` towards a non-PSD partial transpose at fixed `|Δ| = 1`.
///
/// For the worst bipartition `q` with lowest eigenvector `v` of `PT_q(Δ)`,
/// the direction `−PT_q(vv†)` lowers that eigenvalue at unit rate.
fn refine(m: usize, radius: f64, mut delta: QubitState) -> (f64, QubitState) {
    let masks: Vec<usize> = bipartition_subsets(m).iter().map(|s| subset_mask(m, s).expect("valid")).collect();
    let id = QubitState::identity(m).expect("valid m");
    let mut best = f64::INFINITY;
    for _ in 0..REFINE_STEPS {
        let (lam, mask, v) = masks
            .iter()
            .map(|&mask| {
                let (lam, v) = min_eigenpair(&partial_transpose_mask(&delta, mask));
                (lam, mask, v)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("m ≥ 2");
        let state = id.add_scaled(radius, &delta).expect("same m");
        // PT_q(I + rΔ) = I + r·PT_q(Δ).
        let margin = 1.0 + radius * lam;
        best = best.min(margin);
        if margin < -VIOLATION_TOL && psd_margin(&state) >= 0.0 {
            return (margin, state);
        }
        let proj = QubitState::projector(&v).expect("valid length");
        let step = partial_transpose_mask(&proj, mask);
        let next = delta.add_scaled(-REFINE_STEP, &step).expect("same m");
        delta = next.scale(1.0 / next.frobenius_norm());
    }
    (best, id.add_scaled(radius, &delta).expect("same m"))
}

/// Samples `samples` uniform ball states at `radius` and counts PSD and PPT
/// failures, then refines the first `refine_starts` directions.
///
/// Every failure found refutes separability of that state. Finding none is
/// not evidence of separability.
pub fn ppt_violation_search(m: usize, radius: f64, samples: usize, refine_starts: usize, seed: u64) -> Result<ViolationSearch> {
    if m < 2 {
        return Err(Error::QubitCount(m));
    }
    QubitState::identity(m)?;
    let uniform: Vec<(f64, f64, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = sample_ball_state(m, radius, &mut substream(seed, i as u64)).expect("valid radius");
            (psd_margin(&s), ppt_bipartitions(&s).expect("m ≥ 2").worst, i)
        })
        .collect();
    let psd_bad = uniform.iter().filter(|u| u.0 < -VIOLATION_TOL).count();
    let ppt_bad = uniform.iter().filter(|u| u.1 < -VIOLATION_TOL).count();
    let uniform_worst = uniform.iter().map(|u| u.0.min(u.1)).fold(f64::INFINITY, f64::min);
    let mut example = uniform
        .iter()
        .find(|u| u.0.min(u.1) < -VIOLATION_TOL)
        .map(|u| sample_ball_state(m, radius, &mut substream(seed, u.2 as u64)).expect("valid radius"));

    let refined: Vec<(f64, QubitState)> = (0..refine_starts.min(samples))
        .into_par_iter()
        .map(|i| {
            let delta = random_direction(m, &mut substream(seed, i as u64)).expect("valid m");
            refine(m, radius, delta)
        })
        .collect();
    let refined_bad = refined.iter().filter(|r| r.0 < -VIOLATION_TOL).count();
    let refined_worst = refined.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    if example.is_none() {
        example = refined.into_iter().find(|r| r.0 < -VIOLATION_TOL).map(|r| r.1);
    }
    Ok(ViolationSearch {
        m,
        radius,
        samples,
        uniform_psd_violations: psd_bad,
        uniform_ppt_violations: ppt_bad,
        uniform_worst_margin: uniform_worst,
        refined_starts: refine_starts.min(samples),
        refined_ppt_violations: refined_bad,
        refined_worst_margin: refined_worst,
        example,
    })
}

/// `|ψ⟩⟨ψ|` for `ψ = (|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_projector(m: usize) -> Result<QubitState> {
    let n = 1usize << m;
    QubitState::identity(m)?;
    let mut psi = vec![Complex64::default(); n];
    psi[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    psi[n - 1] = psi[0];
    QubitState::projector(&psi)
}
