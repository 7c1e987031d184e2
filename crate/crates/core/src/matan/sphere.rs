//! Projected gradient ascent on the unit sphere.

const MAX_ITERS: usize = 5_000;
const ARMIJO: f64 = 1e-4;
/// Convergence threshold on the size of an accepted step.
pub const STEP_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Ascent {
    pub value: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Maximizes `objective` over the unit sphere from `start`.
///
/// `objective` returns the value and its Euclidean gradient. Steps move along
/// the tangential gradient and are pulled back by normalization; step sizes
/// follow Armijo backtracking. The result is a local maximum, so callers run
/// this from several starts.
pub fn ascend<F>(objective: F, mut start: Vec<f64>) -> Ascent
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    normalize(&mut start);
    let mut x = start;
    let (mut f, mut g) = objective(&x);
    let mut step = 1.0;
    let mut iterations = 0;

    while iterations < MAX_ITERS {
        iterations += 1;
        let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
        let tangent: Vec<f64> = g.iter().zip(&x).map(|(gi, xi)| gi - radial * xi).collect();
        let gn2: f64 = tangent.iter().map(|t| t * t).sum();
        if gn2.sqrt() < 1e-15 {
            break;
        }

        let mut t = step;
        let mut accepted = None;
        while t >= 1e-18 {
            let mut xn: Vec<f64> = x.iter().zip(&tangent).map(|(a, b)| a + t * b).collect();
            normalize(&mut xn);
            let (fn_, gn) = objective(&xn);
            if fn_ >= f + ARMIJO * t * gn2 {
                accepted = Some((xn, fn_, gn));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else { break };
        let moved = x.iter().zip(&xn).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        x = xn;
        f = fn_;
        g = gn;
        step = (2.0 * t).min(1e6);
        if moved < STEP_TOL {
            break;
        }
    }
    Ascent { value: f, point: x, iterations }
}
