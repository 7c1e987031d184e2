//! Injective norm `max |⟨x, a⊗b⊗c⟩|` over unit vectors, and the polar of the
//! unit-ball projective product it measures.

use rayon::prelude::*;

use super::extremal::extremal_element;
use super::tensor::Tensor3;
use crate::error::{Error, Result};
use crate::rng::{child_seed, gaussian_vec, substream, unit_vec};

pub const DEFAULT_RESTARTS: usize = 64;
/// A sweep improving the value by less than this ends the alternation.
pub const SWEEP_TOL: f64 = 1e-13;
/// Contractions shorter than this keep the previous unit vector.
pub const ZERO_GRADIENT: f64 = 1e-14;
const MAX_SWEEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct InjectiveNorm {
    pub value: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

fn replace_with_direction(target: &mut [f64], g: Vec<f64>) {
    let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n >= ZERO_GRADIENT {
        target.iter_mut().zip(g).for_each(|(t, gi)| *t = gi / n);
    }
}

/// Runs the alternating updates from one starting triple and returns the
/// value after every sweep along with the final triple.
///
/// Each update sets one factor to the normalized contraction of `x` against
/// the other two, which maximizes the trilinear form in that factor, so the
/// recorded values never decrease.
pub fn alternate(x: &Tensor3, mut a: Vec<f64>, mut b: Vec<f64>, mut c: Vec<f64>) -> (InjectiveNorm, Vec<f64>) {
    let mut history = Vec::new();
    // Fix the sign so the form starts nonnegative; the absolute value is what is maximized.
    if x.trilinear(&a, &b, &c) < 0.0 {
        a.iter_mut().for_each(|v| *v = -*v);
    }
    let mut value = x.trilinear(&a, &b, &c);
    history.push(value);
    for _ in 0..MAX_SWEEPS {
        replace_with_direction(&mut a, x.contract_except(0, &b, &c));
        replace_with_direction(&mut b, x.contract_except(1, &a, &c));
        replace_with_direction(&mut c, x.contract_except(2, &a, &b));
        let next = x.trilinear(&a, &b, &c);
        history.push(next);
        let improved = next - value;
        value = next;
        if improved < SWEEP_TOL {
            break;
        }
    }
    (InjectiveNorm { value, a, b, c }, history)
}

/// Multi-start alternating maximization. The value is attained by the
/// returned unit triple, so it is a lower bound on the true norm.
pub fn injective_norm(x: &Tensor3, restarts: usize, seed: u64) -> InjectiveNorm {
    let [n1, n2, n3] = x.dims();
    (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = substream(seed, r as u64);
            let a = unit_vec(&mut rng, n1);
            let b = unit_vec(&mut rng, n2);
            let c = unit_vec(&mut rng, n3);
            alternate(x, a, b, c).0
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None::<InjectiveNorm>, |best, cand| match best {
            Some(b) if b.value >= cand.value => Some(b),
            _ => Some(cand),
        })
        .expect("at least one restart")
}

fn check_cube(w: &Tensor3) -> Result<()> {
    if w.dims() != [3, 3, 3] {
        return Err(Error::DimensionMismatch(format!("expected dims [3, 3, 3], got {:?}", w.dims())));
    }
    Ok(())
}

/// `1 − ‖w‖_inj`. Nonnegative values certify (empirically) that `w` lies in
/// the polar of `B ⊗ B ⊗ B`.
pub fn polar_membership(w: &Tensor3, restarts: usize, seed: u64) -> Result<f64> {
    check_cube(w)?;
    Ok(1.0 - injective_norm(w, restarts, seed).value)
}

#[derive(Clone, Debug)]
pub struct Ptp3Options {
    /// Random Gaussian tensors to push onto the polar boundary.
    pub trials: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Includes the extremal element as the first candidate.
    pub seeded: bool,
}

impl Default for Ptp3Options {
    fn default() -> Self {
        Self { trials: 1000, restarts: DEFAULT_RESTARTS, seed: 42, seeded: true }
    }
}

#[derive(Clone, Debug)]
pub struct Ptp3Search {
    /// Largest `|w|` among boundary elements `w / ‖w‖_inj`.
    pub max_norm: f64,
    pub argmax: Tensor3,
    /// Injective norm of `argmax` re-measured with an independent seed.
    pub argmax_injective: f64,
    /// `|w|` of the seeded candidate, when included.
    pub seeded_norm: Option<f64>,
    pub random_max_norm: f64,
    pub random_count: usize,
}

/// Boundary normalization `w / ‖w‖_inj`; `None` for the zero tensor.
pub fn to_polar_boundary(w: &Tensor3, restarts: usize, seed: u64) -> Option<Tensor3> {
    let v = injective_norm(w, restarts, seed).value;
    (v > 0.0).then(|| w.scale(1.0 / v))
}

/// Searches for the largest Euclidean norm on the boundary of the polar of
/// `B ⊗ B ⊗ B` in `R^{3×3×3}`.
pub fn ptp3_inner_radius_search(opts: &Ptp3Options) -> Ptp3Search {
    let random: Vec<(f64, Tensor3)> = (0..opts.trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = substream(opts.seed, t as u64);
            let w = Tensor3::from_vec([3, 3, 3], gaussian_vec(&mut rng, 27)).expect("finite");
            let inner_seed = child_seed(opts.seed, 1, t as u64);
            to_polar_boundary(&w, opts.restarts, inner_seed).map(|b| (b.norm(), b))
        })
        .collect();

    let mut best: Option<(f64, Tensor3)> = None;
    let consider = |n: f64, t: Tensor3, best: &mut Option<(f64, Tensor3)>| {
        if best.as_ref().is_none_or(|(m, _)| n > *m) {
            *best = Some((n, t));
        }
    };
    let mut seeded_norm = None;
    if opts.seeded {
        let (w, _) = extremal_element();
        let b = to_polar_boundary(&w, opts.restarts, child_seed(opts.seed, 2, 0)).expect("nonzero");
        seeded_norm = Some(b.norm());
        consider(b.norm(), b, &mut best);
    }
    let random_max_norm = random.iter().map(|(n, _)| *n).fold(f64::NEG_INFINITY, f64::max);
    let random_count = random.len();
    for (n, t) in random {
        consider(n, t, &mut best);
    }
    let (max_norm, argmax) = best.unwrap_or_else(|| (0.0, Tensor3::zeros([3, 3, 3]).expect("valid dims")));
    let argmax_injective = injective_norm(&argmax, opts.restarts, child_seed(opts.seed, 3, 0)).value;
    Ptp3Search { max_norm, argmax, argmax_injective, seeded_norm, random_max_norm, random_count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_is_exact() {
        let s = 1.0 / 3f64.sqrt();
        let t = Tensor3::rank_one(&[s, s, s], &[0.0, 1.0, 0.0, 0.0], &[0.6, 0.0, -0.8]).unwrap();
        let r = injective_norm(&t, 8, 0);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_tensor_gives_zero() {
        let z = Tensor3::zeros([3, 3, 3]).unwrap();
        let r = injective_norm(&z, 4, 1);
        assert_eq!(r.value, 0.0);
        assert!((r.a.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(polar_membership(&z, 4, 1).unwrap(), 1.0);
    }

    #[test]
    fn alternation_is_monotone() {
        let mut rng = substream(5, 0);
        let t = Tensor3::from_vec([4, 3, 4], gaussian_vec(&mut rng, 48)).unwrap();
        let (_, hist) = alternate(&t, unit_vec(&mut rng, 4), unit_vec(&mut rng, 3), unit_vec(&mut rng, 4));
        assert!(hist.windows(2).all(|w| w[1] >= w[0] - 1e-15));
    }

    #[test]
    fn polar_needs_cube() {
        assert!(polar_membership(&Tensor3::zeros([4, 3, 3]).unwrap(), 2, 0).is_err());
    }
}
