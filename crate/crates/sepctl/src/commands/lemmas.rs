use rand::Rng;
use rayon::prelude::*;
use sepball::matan::{
    block_spectrum, m012_bound, pencil_gain, pencil_margin, pencil_norm_bound, sym_eigenvalues, trace_pairing_bound,
    trig_lmi_verify, trig_pencil_min_eig, GenMatrix, MatrixPencil, SymMatrix,
};
use sepball::rng::{child_seed, gaussian_vec, substream, unit_vec, SepRng};

use super::tol_warning;
use crate::cli::RunConfig;
use crate::error::CliError;
use crate::report::{CertReport, Check};

pub const DEFAULT_TRIALS: usize = 1000;
pub const PENCIL_RESTARTS: usize = 16;
const L1_TOL: f64 = 1e-10;
const L2_TOL: f64 = 1e-8;
const NORM_BOUND_TOL: f64 = 1e-6;
const FACTOR_TOL: f64 = 1e-9;
/// Pencils whose re-measured margin exceeds this are not counted as certified.
const CERTIFIED_MARGIN: f64 = 1e-9;
const FACTOR_GRID: usize = 256;

fn gaussian_matrix(rng: &mut SepRng, rows: usize, cols: usize) -> GenMatrix {
    GenMatrix::from_vec(rows, cols, gaussian_vec(rng, rows * cols)).expect("shape")
}

/// `[[αI, M], [Mᵀ, βI]]`.
pub fn l1_block(alpha: f64, beta: f64, m: &GenMatrix) -> SymMatrix {
    let n = m.rows();
    SymMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => if i == j { alpha } else { 0.0 },
        (false, false) => if i == j { beta } else { 0.0 },
        _ => m[(j, i - n)],
    })
}

/// Gram matrix `G Gᵀ` of a random `2n × r` factor, split into `(A, B, C)`.
pub fn psd_blocks(rng: &mut SepRng, n: usize) -> (SymMatrix, SymMatrix, GenMatrix) {
    let rank = rng.random_range(1..=2 * n);
    let g = gaussian_matrix(rng, 2 * n, rank);
    let z = g.matmul(&g.transpose());
    (
        SymMatrix::symmetric_part(&z.submatrix(0, 0, n, n)),
        SymMatrix::symmetric_part(&z.submatrix(n, n, n, n)),
        z.submatrix(0, n, n, n),
    )
}

/// `(A0, A1, A2, X)` read off a PSD matrix `[[P, Q], [Qᵀ, R]]`:
/// `A0 = (P+R)/2`, `A1 = (P−R)/2`, `A2 = sym(Q)`, `X = skew(Q)`.
pub fn feasible_factor_instance(rng: &mut SepRng, n: usize) -> (SymMatrix, SymMatrix, SymMatrix, GenMatrix) {
    let (p, r, q) = psd_blocks(rng, n);
    (p.add(&r).scale(0.5), p.sub(&r).scale(0.5), SymMatrix::symmetric_part(&q), q.skew_part())
}

/// Random pencil with `|v| < 1`, rescaled onto the boundary of its own
/// constraint. Returns the pencil and its re-measured margin.
pub fn boundary_pencil(n: usize, m: usize, restarts: usize, seed: u64, trial: u64) -> (MatrixPencil, f64) {
    let mut rng = substream(seed, trial);
    let vnorm = 0.95 * rng.random::<f64>();
    let v: Vec<f64> = unit_vec(&mut rng, m).into_iter().map(|x| x * vnorm).collect();
    let mats = (0..=m).map(|_| gaussian_matrix(&mut rng, n, n)).collect();
    let p = MatrixPencil::new(v, mats).expect("finite");
    let gain = pencil_gain(&p, restarts, child_seed(seed, 1, trial)).expect("|v| < 1");
    let q = p.scaled(1.0 / gain);
    let margin = pencil_margin(&q, restarts, child_seed(seed, 2, trial)).worst;
    (q, margin)
}

struct Tally {
    worst: f64,
    bad: usize,
    trials: usize,
}

impl Tally {
    /// Aggregates values that must stay at most `bound`.
    fn at_most(values: &[f64], bound: f64) -> Self {
        Self {
            worst: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            bad: values.iter().filter(|&&v| v > bound).count(),
            trials: values.len(),
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<CertReport, CliError> {
    let t = cfg.trials;
    let restarts = cfg.restarts.unwrap_or(PENCIL_RESTARTS);
    let (l1_tol, l2_tol, nb_tol, f_tol) =
        (cfg.tol_or(L1_TOL), cfg.tol_or(L2_TOL), cfg.tol_or(NORM_BOUND_TOL), cfg.tol_or(FACTOR_TOL));
    let mut report = CertReport::new("lemmas", cfg.seed, t, Some(restarts));
    report.tolerance("l1_spectrum", l1_tol);
    report.tolerance("l2_bound", l2_tol);
    report.tolerance("pencil_norm_bounds", nb_tol);
    report.tolerance("factor_margin", f_tol);
    report.tolerance("pencil_certified_margin", CERTIFIED_MARGIN);
    report.warnings.extend(tol_warning(cfg.tol));

    // Block spectrum against a direct eigensolve.
    let seed = child_seed(cfg.seed, 100, 0);
    let l1: Vec<f64> = (0..t)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let n = rng.random_range(1..=5);
            let (alpha, beta) = (2.0 * rng.random::<f64>() - 1.0, 2.0 * rng.random::<f64>() - 1.0);
            let m = gaussian_matrix(&mut rng, n, n);
            let formula = block_spectrum(alpha, beta, &m).expect("square");
            let mut direct = sym_eigenvalues(&l1_block(alpha, beta, &m));
            direct.sort_by(|a, b| b.total_cmp(a));
            formula.iter().zip(&direct).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .collect();
    let s = Tally::at_most(&l1, l1_tol);
    report.check(Check::at_most("l1_block_spectrum_error", s.worst, l1_tol, s.trials, s.bad));

    // |C|² against the sorted spectral pairing.
    let seed = child_seed(cfg.seed, 101, 0);
    let l2: Vec<f64> = (0..10 * t)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let n = rng.random_range(1..=5);
            let (a, b, c) = psd_blocks(&mut rng, n);
            c.frobenius_sq() - trace_pairing_bound(&a, &b).expect("same size")
        })
        .collect();
    let s = Tally::at_most(&l2, l2_tol);
    report.check(Check::at_most("l2_excess", s.worst, l2_tol, s.trials, s.bad).with_detail("|C|^2 - sum lambda_k mu_k"));

    // Pencil norm bounds on margin-certified boundary pencils.
    let seed = child_seed(cfg.seed, 102, 0);
    let m012: Vec<(f64, bool)> = (0..t)
        .into_par_iter()
        .map(|i| {
            let n = 2 + i % 3;
            let (p, margin) = boundary_pencil(n, 2, restarts, seed, i as u64);
            (p.mass() - m012_bound(n, p.shift_norm()), margin <= CERTIFIED_MARGIN)
        })
        .collect();
    push_pencil_check(&mut report, "m012_excess", &m012, nb_tol);

    let seed = child_seed(cfg.seed, 103, 0);
    let odd: Vec<(f64, bool)> = (0..t)
        .into_par_iter()
        .map(|i| {
            let m = 2 + i % 2;
            let (p, margin) = boundary_pencil(3, m, restarts, seed, i as u64);
            let bound = pencil_norm_bound(3, m, p.shift_norm()).expect("odd n");
            (p.mass() - bound, margin <= CERTIFIED_MARGIN)
        })
        .collect();
    push_pencil_check(&mut report, "odd_n_excess", &odd, nb_tol);

    // Verify direction of the trigonometric factorization.
    let seed = child_seed(cfg.seed, 104, 0);
    let factor: Vec<(f64, f64)> = (0..t)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let n = rng.random_range(1..=4);
            let (a0, a1, a2, x) = feasible_factor_instance(&mut rng, n);
            let lmi = trig_lmi_verify(&a0, &a1, &a2, &x).expect("skew by construction");
            let pencil = trig_pencil_min_eig(&a0, &a1, &a2, FACTOR_GRID).expect("sizes").min_eig;
            (lmi, pencil)
        })
        .collect();
    let lmi: Vec<f64> = factor.iter().map(|f| -f.0).collect();
    let pen: Vec<f64> = factor.iter().map(|f| -f.1).collect();
    let s = Tally::at_most(&lmi, f_tol);
    report.check(Check::at_least("factor_lmi_margin", -s.worst, -f_tol, s.trials, s.bad));
    let s = Tally::at_most(&pen, f_tol);
    report.check(Check::at_least("factor_pencil_min_eig", -s.worst, -f_tol, s.trials, s.bad));

    report.notes.push(format!(
        "trial counts: l1 {t}, l2 {}, m012 {t}, odd_n {t}, factor {t}; pencil restarts {restarts}",
        10 * t
    ));
    Ok(report)
}

fn push_pencil_check(report: &mut CertReport, name: &str, rows: &[(f64, bool)], tol: f64) {
    let certified: Vec<f64> = rows.iter().filter(|r| r.1).map(|r| r.0).collect();
    let s = Tally::at_most(&certified, tol);
    report.check(
        Check::at_most(name, s.worst, tol, s.trials, s.bad)
            .with_detail(format!("{} of {} pencils margin-certified", certified.len(), rows.len())),
    );
}
