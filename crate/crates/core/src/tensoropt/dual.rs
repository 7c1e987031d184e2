//! Membership in the dual of `L_4 ⊗ L_4 ⊗ L_4`.
//!
//! Extreme rays of `L_4` are `(1, u)` with `|u| = 1`, so `x` is in the dual
//! cone exactly when `⟨x, (1,u)⊗(1,v)⊗(1,w)⟩ ≥ 0` for all unit `u, v, w`.

use rayon::prelude::*;
use serde::Serialize;

use super::tensor::Tensor3;
use crate::error::{Error, Result};
use crate::matan::{GenMatrix, MatrixPencil};
use crate::rng::{child_seed, substream, unit_vec};

pub const DEFAULT_RESTARTS: usize = 128;
const SWEEP_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 10_000;
/// Rechecks after the first shift; each one re-shifts by any residual negativity.
const CALIBRATION_RECHECKS: usize = 4;
/// `x_000 + t` at or below this multiple of `|x|` is rejected as degenerate.
const DEGENERATE_REL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ConeMin {
    pub value: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

fn lift(u: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(u.len() + 1);
    out.push(1.0);
    out.extend_from_slice(u);
    out
}

/// Optimal unit tail against the lifted contraction `g`: value `g_0 − |g_tail|`.
fn best_tail(g: &[f64], prev: &mut [f64]) -> f64 {
    let tail = &g[1..];
    let n = tail.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n >= 1e-14 {
        prev.iter_mut().zip(tail).for_each(|(p, t)| *p = -t / n);
    }
    g[0] + tail.iter().zip(prev.iter()).map(|(t, p)| t * p).sum::<f64>()
}

fn check_cube4(x: &Tensor3) -> Result<()> {
    if x.dims() != [4, 4, 4] {
        return Err(Error::DimensionMismatch(format!("expected dims [4, 4, 4], got {:?}", x.dims())));
    }
    Ok(())
}

fn descend(x: &Tensor3, mut u: Vec<f64>, mut v: Vec<f64>, mut w: Vec<f64>) -> ConeMin {
    let mut value = x.trilinear(&lift(&u), &lift(&v), &lift(&w));
    for _ in 0..MAX_SWEEPS {
        best_tail(&x.contract_except(0, &lift(&v), &lift(&w)), &mut u);
        best_tail(&x.contract_except(1, &lift(&u), &lift(&w)), &mut v);
        let next = best_tail(&x.contract_except(2, &lift(&u), &lift(&v)), &mut w);
        let improved = value - next;
        value = next;
        if improved < SWEEP_TOL {
            break;
        }
    }
    ConeMin { value, u, v, w }
}

/// Minimizes `⟨x, (1,u)⊗(1,v)⊗(1,w)⟩` over unit `u, v, w ∈ R³`.
///
/// The returned value is attained, so it is an upper bound on the true
/// minimum; `value ≥ 0` is empirical evidence of dual membership.
pub fn cone_trilinear_min(x: &Tensor3, restarts: usize, seed: u64) -> Result<ConeMin> {
    check_cube4(x)?;
    let best = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = substream(seed, r as u64);
            let (u, v, w) = (unit_vec(&mut rng, 3), unit_vec(&mut rng, 3), unit_vec(&mut rng, 3));
            descend(x, u, v, w)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None::<ConeMin>, |best, c| match best {
            Some(b) if b.value <= c.value => Some(b),
            _ => Some(c),
        })
        .expect("at least one restart");
    Ok(best)
}

/// A tensor on the boundary of the dual cone with `x_000 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualElement {
    pub t: Tensor3,
    /// Final recheck of `cone_trilinear_min` on `t`.
    pub calibration: f64,
    pub normalized: bool,
}

impl DualElement {
    /// Wraps an already normalized tensor after checking `x_000 = 1`.
    pub fn from_normalized(t: Tensor3, calibration: f64) -> Result<Self> {
        check_cube4(&t)?;
        let x000 = t.get(0, 0, 0);
        if (x000 - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(x000));
        }
        Ok(Self { t, calibration, normalized: true })
    }
}

/// Shifts `x` along `e_000` onto the dual-cone boundary and normalizes.
///
/// `⟨e_000, (1,u)⊗(1,v)⊗(1,w)⟩ ≡ 1`, so the minimum moves exactly with the
/// shift: `min(x + t·e_000) = min(x) + t`. The shift is `t = −min(x)`,
/// followed by rechecks with fresh seeds that add any residual negativity.
pub fn dual_boundary_calibrate(x: &Tensor3, restarts: usize, seed: u64) -> Result<DualElement> {
    check_cube4(x)?;
    if x.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let mut shifted = x.clone();
    let mut shift = -cone_trilinear_min(x, restarts, seed)?.value;
    shifted.set(0, 0, 0, x.get(0, 0, 0) + shift);
    let mut recheck = 0.0;
    for round in 0..CALIBRATION_RECHECKS {
        recheck = cone_trilinear_min(&shifted, restarts, child_seed(seed, 7, round as u64))?.value;
        if recheck >= 0.0 {
            break;
        }
        shift -= recheck;
        shifted.set(0, 0, 0, x.get(0, 0, 0) + shift);
    }
    let top = shifted.get(0, 0, 0);
    if top <= DEGENERATE_REL * x.norm() {
        return Err(Error::DegenerateCalibration(top));
    }
    let mut t = shifted.scale(1.0 / top);
    t.set(0, 0, 0, 1.0);
    Ok(DualElement { t, calibration: recheck.min(0.0) / top, normalized: true })
}

/// `(x + (D⊗D⊗I)x)/2` with `D = diag(1,−1,−1,−1)`: zeroes every coordinate
/// where exactly one of the first two indices is 0.
pub fn symmetrize_dd_id(x: &Tensor3) -> Result<Tensor3> {
    check_cube4(x)?;
    Tensor3::from_fn([4, 4, 4], |i, j, k| if (i == 0) == (j == 0) { x.get(i, j, k) } else { 0.0 })
}

/// The pencil attached to a symmetrized dual element:
/// `v_k = y_00k`, `(M_0)_ij = y_ij0`, `(M_k)_ij = y_ijk` with `i, j, k ∈ 1..=3`.
///
/// For `y` with `y_000 = 1` and the mixed coordinates zeroed, dual membership
/// is equivalent to `σ_max(M_0 + Σ z_k M_k) ≤ 1 + z·v` on the unit sphere.
pub fn prop_pencil(y: &Tensor3) -> Result<MatrixPencil> {
    check_cube4(y)?;
    let v = (1..4).map(|k| y.get(0, 0, k)).collect();
    let mats = (0..4).map(|k| GenMatrix::from_fn(3, 3, |i, j| y.get(i + 1, j + 1, k))).collect();
    MatrixPencil::new(v, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(j: usize, k: usize, l: usize) -> Tensor3 {
        Tensor3::basis([4, 4, 4], j, k, l).unwrap()
    }

    #[test]
    fn constant_functional() {
        let r = cone_trilinear_min(&basis(0, 0, 0), 8, 0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_of_boundary_functionals() {
        let e = [1.0, 1.0, 0.0, 0.0];
        let x = Tensor3::rank_one(&e, &e, &e).unwrap();
        let r = cone_trilinear_min(&x, 32, 1).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert!((r.u[0] + 1.0).abs() < 1e-6 || (r.v[0] + 1.0).abs() < 1e-6 || (r.w[0] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn single_corner_calibrates_by_one() {
        let d = dual_boundary_calibrate(&basis(1, 1, 1), 32, 2).unwrap();
        assert_eq!(d.t.get(0, 0, 0), 1.0);
        assert!((d.t.get(1, 1, 1) - 1.0).abs() < 1e-12);
        assert!(d.calibration.abs() < 1e-12);
    }

    #[test]
    fn negative_constant_is_degenerate() {
        let x = basis(0, 0, 0).scale(-1.0);
        assert!(matches!(dual_boundary_calibrate(&x, 8, 0), Err(Error::DegenerateCalibration(_))));
        let z = Tensor3::zeros([4, 4, 4]).unwrap();
        assert_eq!(dual_boundary_calibrate(&z, 8, 0), Err(Error::ZeroTensor));
    }

    #[test]
    fn symmetrization_kills_mixed_classes() {
        assert_eq!(symmetrize_dd_id(&basis(0, 0, 0)).unwrap(), basis(0, 0, 0));
        assert!(symmetrize_dd_id(&basis(1, 0, 2)).unwrap().is_zero());
        assert!(symmetrize_dd_id(&basis(0, 3, 1)).unwrap().is_zero());
        assert_eq!(symmetrize_dd_id(&basis(2, 3, 0)).unwrap(), basis(2, 3, 0));
    }

    #[test]
    fn wrong_dims_rejected() {
        let t = Tensor3::zeros([3, 3, 3]).unwrap();
        assert!(cone_trilinear_min(&t, 1, 0).is_err());
        assert!(symmetrize_dd_id(&t).is_err());
    }
}
