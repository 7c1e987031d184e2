//! Trigonometric matrix pencils `A0 + cos φ A1 + sin φ A2`.
//!
//! Uniform positivity over φ is equivalent to feasibility of the block LMI
//! `[[A0+A1, A2+X], [A2−X, A0−A1]] ⪰ 0` for some skew `X`. Verification of a
//! given `X` is exact up to the eigensolver; the search for `X` is a
//! best-effort alternating projection and a failed search proves nothing.

use std::f64::consts::PI;

use super::dense::{GenMatrix, SymMatrix};
use super::eigen::{min_eigenvalue, sym_eigen};
use crate::error::{Error, Result};

/// Skewness tolerance for a supplied `X`.
pub const SKEW_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct TrigPencilMin {
    pub min_eig: f64,
    pub argmin: f64,
    pub grid_min: f64,
    pub grid_argmin: f64,
}

fn check_sizes(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix) -> Result<()> {
    if a0.n() != a1.n() || a0.n() != a2.n() {
        return Err(Error::DimensionMismatch(format!("pencil sizes {}, {}, {}", a0.n(), a1.n(), a2.n())));
    }
    Ok(())
}

pub fn pencil_at(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix, phi: f64) -> SymMatrix {
    a0.combine3(phi.cos(), a1, phi.sin(), a2)
}

/// Grid scan of `λ_min(A0 + cos φ A1 + sin φ A2)` over `[−π, π)` followed by a
/// golden-section refinement around the best grid point.
pub fn trig_pencil_min_eig(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix, grid_size: usize) -> Result<TrigPencilMin> {
    check_sizes(a0, a1, a2)?;
    if grid_size < 8 {
        return Err(Error::OutOfRange(format!("grid_size {grid_size} < 8")));
    }
    let f = |phi: f64| min_eigenvalue(&pencil_at(a0, a1, a2, phi));
    let h = 2.0 * PI / grid_size as f64;
    let (grid_argmin, grid_min) = (0..grid_size)
        .map(|i| {
            let phi = -PI + h * i as f64;
            (phi, f(phi))
        })
        .fold((0.0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (grid_argmin - h, grid_argmin + h);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let (refined_arg, refined) = if fc < fd { (c, fc) } else { (d, fd) };
    let (min_eig, argmin) = if refined < grid_min { (refined, refined_arg) } else { (grid_min, grid_argmin) };
    let argmin = (argmin + PI).rem_euclid(2.0 * PI) - PI;
    Ok(TrigPencilMin { min_eig, argmin, grid_min, grid_argmin })
}

/// `[[A0+A1, A2+X], [A2−X, A0−A1]]`; symmetric because `X` is skew.
pub fn trig_lmi_block(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix, x: &GenMatrix) -> SymMatrix {
    let n = a0.n();
    let p = a0.add(a1);
    let q = a0.sub(a1);
    SymMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => p.get(i, j),
        (false, false) => q.get(i - n, j - n),
        // lower triangle only: i >= j, so this is the (A2 − X) block
        (false, true) => a2.get(i - n, j) - x[(i - n, j)],
        (true, false) => a2.get(i, j - n) + x[(i, j - n)],
    })
}

/// Smallest eigenvalue of the block LMI at the given skew `X`.
pub fn trig_lmi_verify(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix, x: &GenMatrix) -> Result<f64> {
    check_sizes(a0, a1, a2)?;
    if x.shape() != (a0.n(), a0.n()) {
        return Err(Error::DimensionMismatch(format!("X is {:?}, pencil size {}", x.shape(), a0.n())));
    }
    let residual = x.skew_residual();
    if residual > SKEW_TOL {
        return Err(Error::NotSkew(residual));
    }
    Ok(min_eigenvalue(&trig_lmi_block(a0, a1, a2, x)))
}

#[derive(Clone, Copy, Debug)]
pub struct LmiSearchOptions {
    pub max_iters: usize,
    /// Accept once the LMI margin is at least `-tol`.
    pub tol: f64,
}

impl Default for LmiSearchOptions {
    fn default() -> Self {
        Self { max_iters: 10_000, tol: 1e-9 }
    }
}

#[derive(Clone, Debug)]
pub enum LmiSearch {
    Feasible { x: GenMatrix, margin: f64, iterations: usize },
    /// Iteration cap reached. Not a proof of infeasibility.
    Inconclusive { best_margin: f64, iterations: usize },
}

impl LmiSearch {
    pub fn certificate(&self) -> Option<&GenMatrix> {
        match self {
            LmiSearch::Feasible { x, .. } => Some(x),
            LmiSearch::Inconclusive { .. } => None,
        }
    }
}

/// Alternates between the PSD cone (eigenvalue clipping at `tol`) and the
/// affine set of block matrices parameterized by skew `X` (skew part of the
/// off-diagonal block).
pub fn trig_lmi_search(a0: &SymMatrix, a1: &SymMatrix, a2: &SymMatrix, opts: LmiSearchOptions) -> Result<LmiSearch> {
    check_sizes(a0, a1, a2)?;
    let n = a0.n();
    let mut x = GenMatrix::zeros(n, n);
    let mut best_margin = f64::NEG_INFINITY;
    for it in 0..opts.max_iters {
        let block = trig_lmi_block(a0, a1, a2, &x);
        let eig = sym_eigen(&block);
        let margin = eig.min();
        best_margin = best_margin.max(margin);
        if margin >= -opts.tol {
            return Ok(LmiSearch::Feasible { x, margin, iterations: it });
        }
        let clipped: Vec<f64> = eig.values.iter().map(|&l| l.max(opts.tol)).collect();
        let proj = |i: usize, j: usize| (0..2 * n).map(|k| eig.vectors[(i, k)] * clipped[k] * eig.vectors[(j, k)]).sum::<f64>();
        let off = GenMatrix::from_fn(n, n, |i, j| proj(i, j + n));
        x = off.skew_part();
    }
    Ok(LmiSearch::Inconclusive { best_margin, iterations: opts.max_iters })
}
