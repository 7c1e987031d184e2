//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p sepball --test acceptance`; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use sepball::conegeo::exact::{rat, to_f64};
use sepball::conegeo::rho::{rho_closed_form, rho_sq_closed_exact};
use sepball::conegeo::{cone_to_ball_param, inclusion_radius, inclusion_radius_sq_exact, rho_sequence, Rational};
use sepball::matan::{
    block_spectrum, m012_bound, pencil_gain, pencil_margin, pencil_norm_bound, svd, sym_eigenvalues, trace_pairing_bound,
    trig_lmi_verify, trig_pencil_min_eig, GenMatrix, MatrixPencil, SymMatrix,
};
use sepball::qsep::{ppt_all_bipartitions, psd_margin, sample_ball_state, to_pauli, QubitState};
use sepball::rng::{child_seed, gaussian_vec, substream, unit_vec, SepRng};
use sepball::tensoropt::inequalities::{NONROOT, WEIGHTED_51, WEIGHTED_81};
use sepball::tensoropt::{
    apply_triple_map, coefficient_identities, dual_boundary_calibrate, extremal_element, inequality_suite, injective,
    injective_norm, ptp3_inner_radius_search, DualElement, Ptp3Options, Tensor3,
};

const SEED: u64 = 20_240_601;

// Pinned tolerances.
const TOL_RECURSION: f64 = 1e-12;
const TOL_PTP3: f64 = 1e-6;
const TOL_ORTHO: f64 = 1e-9;
const TOL_INEQ: f64 = 1e-6;
const TOL_L1: f64 = 1e-10;
const TOL_L2: f64 = 1e-8;
const TOL_NORM_BOUND: f64 = 1e-6;
const TOL_CERTIFIED: f64 = 1e-9;
const TOL_FACTOR: f64 = 1e-9;
const TOL_NECESSARY: f64 = 1e-9;
const TOL_PAIRING: f64 = 1e-8;
const TOL_CHAIN: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gaussian_matrix(rng: &mut SepRng, rows: usize, cols: usize) -> GenMatrix {
    GenMatrix::from_vec(rows, cols, gaussian_vec(rng, rows * cols)).unwrap()
}

fn random_orthogonal(rng: &mut SepRng) -> GenMatrix {
    svd(&gaussian_matrix(rng, 3, 3)).unwrap().u
}

fn calibrated_elements(count: usize, seed: u64) -> Vec<DualElement> {
    (0..count)
        .into_par_iter()
        .filter_map(|t| {
            let x = Tensor3::from_vec([4, 4, 4], gaussian_vec(&mut substream(seed, t as u64), 64)).unwrap();
            dual_boundary_calibrate(&x, sepball::tensoropt::dual::DEFAULT_RESTARTS, child_seed(seed, 1, t as u64)).ok()
        })
        .collect()
}

fn exact_constants() -> Outcome {
    let third = inclusion_radius_sq_exact(4, 4, rat(1, 1), rat(1, 1)).unwrap();
    let five27 = inclusion_radius_sq_exact(16, 4, rat(1, 3), rat(5, 3)).unwrap();
    let f1 = inclusion_radius(4, 4, 1.0, 1.0).unwrap();
    let f2 = inclusion_radius(16, 4, (1.0f64 / 3.0).sqrt(), (5.0f64 / 3.0).sqrt()).unwrap();
    let float_ok = (f1 - (1.0f64 / 3.0).sqrt()).abs() < 1e-15 && (f2 - (5.0f64 / 27.0).sqrt()).abs() < 1e-15;
    outcome(
        third == rat(1, 3) && five27 == rat(5, 27) && float_ok,
        format!("r^2 = {third} and {five27} exactly; floats {f1:.16} {f2:.16}"),
    )
}

fn rho_table() -> Outcome {
    let seq = rho_sequence(30).unwrap();
    let rel = (3..=30)
        .map(|k| ((seq.rho_recursion(k) - seq.rho(k)) / seq.rho(k)).abs())
        .fold(0.0, f64::max);
    let ratio = seq.squared_ratio_exact(3);
    let exact_ok = seq.rho_sq_exact(3) == Some(rat(16, 19)) && seq.prior_sq_exact(3) == Some(rat(4, 5));
    outcome(
        exact_ok && ratio == Some(rat(20, 19)) && rel <= TOL_RECURSION,
        format!(
            "rho_3^2 = {}, ratio vs 4/5 = {} ({:.4}%), max rel recursion gap k<=30 {rel:.2e}",
            seq.rho_sq_exact(3).map_or("?".into(), |r| r.to_string()),
            ratio.map_or("?".into(), |r| r.to_string()),
            ratio.map_or(f64::NAN, |r| (to_f64(&r) - 1.0) * 100.0),
        ),
    )
}

fn ptp3() -> Outcome {
    let search = ptp3_inner_radius_search(&Ptp3Options {
        trials: 1000,
        restarts: injective::DEFAULT_RESTARTS,
        seed: SEED,
        seeded: true,
    });
    let sqrt7 = 7f64.sqrt();
    let attained = (search.max_norm - sqrt7).abs() <= TOL_PTP3 && (search.argmax_injective - 1.0).abs() <= TOL_PTP3;
    let random_ok = search.random_count == 1000 && search.random_max_norm <= sqrt7 + TOL_PTP3;

    let (w, _) = extremal_element();
    let inv: Vec<(f64, f64)> = (0..100)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(child_seed(SEED, 3, 0), t);
            let (a, b, c) = (random_orthogonal(&mut rng), random_orthogonal(&mut rng), random_orthogonal(&mut rng));
            let y = apply_triple_map(&a, &b, &c, &w).unwrap();
            let inj = injective_norm(&y, injective::DEFAULT_RESTARTS, child_seed(SEED, 4, t)).value;
            ((y.norm() - sqrt7).abs(), (inj - 1.0).abs())
        })
        .collect();
    let (dn, di) = inv.iter().fold((0.0f64, 0.0f64), |(a, b), p| (a.max(p.0), b.max(p.1)));
    outcome(
        attained && random_ok && dn <= TOL_ORTHO && di <= TOL_ORTHO,
        format!(
            "max |w| {:.12} at inj {:.12}; random max {:.6} over {}; orthogonal drift |w| {dn:.1e}, inj {di:.1e}",
            search.max_norm, search.argmax_injective, search.random_max_norm, search.random_count
        ),
    )
}

fn inequality_suite_criterion() -> Outcome {
    let elements = calibrated_elements(1000, child_seed(SEED, 5, 0));
    let ids = coefficient_identities();
    let integers_ok = WEIGHTED_81.rhs == 81
        && WEIGHTED_81.a == [13; 3]
        && WEIGHTED_81.b == [11; 3]
        && WEIGHTED_81.c == 9
        && WEIGHTED_51.rhs == 51
        && WEIGHTED_51.a == [7; 3]
        && WEIGHTED_51.b == [6; 3]
        && WEIGHTED_51.c == 6;
    let mut worst = f64::INFINITY;
    let mut bad = 0;
    for d in &elements {
        let r = inequality_suite(d).unwrap();
        worst = worst.min(r.min_margin());
        bad += r.violations(TOL_INEQ).len();
    }
    let recheck = elements.iter().map(|d| d.calibration).fold(f64::INFINITY, f64::min);
    outcome(
        elements.len() == 1000 && bad == 0 && ids.all() && integers_ok && recheck >= -TOL_INEQ,
        format!("{} elements, {bad} violations, worst margin {worst:.3e}, identities {}", elements.len(), ids.all()),
    )
}

fn psd_blocks(rng: &mut SepRng, n: usize) -> (SymMatrix, SymMatrix, GenMatrix) {
    let rank = rng.random_range(1..=2 * n);
    let g = gaussian_matrix(rng, 2 * n, rank);
    let z = g.matmul(&g.transpose());
    (
        SymMatrix::symmetric_part(&z.submatrix(0, 0, n, n)),
        SymMatrix::symmetric_part(&z.submatrix(n, n, n, n)),
        z.submatrix(0, n, n, n),
    )
}

fn boundary_pencil(n: usize, m: usize, seed: u64, t: u64) -> (MatrixPencil, f64) {
    let mut rng = substream(seed, t);
    let vnorm = 0.95 * rng.random::<f64>();
    let v = unit_vec(&mut rng, m).into_iter().map(|x| x * vnorm).collect();
    let mats = (0..=m).map(|_| gaussian_matrix(&mut rng, n, n)).collect();
    let p = MatrixPencil::new(v, mats).unwrap();
    let q = p.scaled(1.0 / pencil_gain(&p, 16, child_seed(seed, 1, t)).unwrap());
    let margin = pencil_margin(&q, 16, child_seed(seed, 2, t)).worst;
    (q, margin)
}

fn lemma_monte_carlo() -> Outcome {
    let s1 = child_seed(SEED, 6, 0);
    let l1 = (0..1000u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(s1, t);
            let n = rng.random_range(1..=5);
            let (alpha, beta) = (rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
            let m = gaussian_matrix(&mut rng, n, n);
            let block = SymMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
                (true, true) => f64::from(u8::from(i == j)) * alpha,
                (false, false) => f64::from(u8::from(i == j)) * beta,
                _ => m[(j, i - n)],
            });
            let mut direct = sym_eigenvalues(&block);
            direct.sort_by(|a, b| b.total_cmp(a));
            let formula = block_spectrum(alpha, beta, &m).unwrap();
            formula.iter().zip(&direct).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);

    let s2 = child_seed(SEED, 7, 0);
    let l2 = (0..10_000u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(s2, t);
            let n = rng.random_range(1..=5);
            let (a, b, c) = psd_blocks(&mut rng, n);
            c.frobenius_sq() - trace_pairing_bound(&a, &b).unwrap()
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let s3 = child_seed(SEED, 8, 0);
    let pencils: Vec<(f64, bool)> = (0..2000u64)
        .into_par_iter()
        .map(|t| {
            let (n, m) = if t < 1000 { (2 + (t % 3) as usize, 2) } else { (3, 2 + (t % 2) as usize) };
            let (p, margin) = boundary_pencil(n, m, s3, t);
            let bound =
                if t < 1000 { m012_bound(n, p.shift_norm()) } else { pencil_norm_bound(n, m, p.shift_norm()).unwrap() };
            (p.mass() - bound, margin <= TOL_CERTIFIED)
        })
        .collect();
    let certified = pencils.iter().filter(|p| p.1).count();
    let pencil_excess = pencils.iter().filter(|p| p.1).map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);

    let s4 = child_seed(SEED, 9, 0);
    let factor = (0..1000u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(s4, t);
            let n = rng.random_range(1..=4);
            let (p, r, q) = psd_blocks(&mut rng, n);
            let (a0, a1, a2) = (p.add(&r).scale(0.5), p.sub(&r).scale(0.5), SymMatrix::symmetric_part(&q));
            let lmi = trig_lmi_verify(&a0, &a1, &a2, &q.skew_part()).unwrap();
            lmi.min(trig_pencil_min_eig(&a0, &a1, &a2, 256).unwrap().min_eig)
        })
        .reduce(|| f64::INFINITY, f64::min);

    outcome(
        l1 <= TOL_L1 && l2 <= TOL_L2 && certified == 2000 && pencil_excess <= TOL_NORM_BOUND && factor >= -TOL_FACTOR,
        format!(
            "L1 err {l1:.1e}, L2 excess {l2:.1e}, pencil excess {pencil_excess:.3e} ({certified}/2000 certified), factor margin {factor:.1e}"
        ),
    )
}

fn ball_consistency() -> Outcome {
    let radius = (16.0f64 / 19.0).sqrt();
    let s = child_seed(SEED, 10, 0);
    let necessary = (0..10_000u64)
        .into_par_iter()
        .map(|t| {
            let st = sample_ball_state(3, radius, &mut substream(s, t)).unwrap();
            psd_margin(&st).min(ppt_all_bipartitions(&st).unwrap().worst)
        })
        .reduce(|| f64::INFINITY, f64::min);

    let witnesses = calibrated_elements(1000, child_seed(SEED, 11, 0));
    let states: Vec<Tensor3> = (0..1000u64)
        .map(|t| {
            let st = sample_ball_state(3, radius, &mut substream(s, 20_000 + t)).unwrap();
            to_pauli(&st).to_tensor().unwrap()
        })
        .collect();
    let pairing = witnesses
        .par_iter()
        .map(|d| states.iter().map(|x| d.t.dot(x).unwrap()).fold(f64::INFINITY, f64::min))
        .reduce(|| f64::INFINITY, f64::min);
    outcome(
        necessary >= -TOL_NECESSARY && pairing >= -TOL_PAIRING && witnesses.len() == 1000,
        format!(
            "worst PSD/PPT margin {necessary:.4e} over 10^4 states; worst pairing {pairing:.4e} over {}x{}",
            witnesses.len(),
            states.len()
        ),
    )
}

fn chain() -> Outcome {
    let r_sq = NONROOT.rhs_value().recip();
    let r_sq_exact = Rational::new(NONROOT.denom as i128, NONROOT.rhs as i128);
    let rho_sq_exact = r_sq_exact / (Rational::from_integer(1) + r_sq_exact);
    let state_sq_exact = rho_sq_exact * Rational::from_integer(8);
    let rho = cone_to_ball_param(r_sq.sqrt()).unwrap();
    let radius = rho * 8f64.sqrt();
    let float_ok = (r_sq - 2.0 / 17.0).abs() <= TOL_CHAIN
        && (rho - (2.0f64 / 19.0).sqrt()).abs() <= TOL_CHAIN
        && (radius - (16.0f64 / 19.0).sqrt()).abs() <= TOL_CHAIN
        && (radius - rho_closed_form(3)).abs() <= TOL_CHAIN;
    // The trace-one normalization of the same ball.
    let id = QubitState::identity(3).unwrap();
    let scaled_ok = (radius / id.frobenius_norm() - rho).abs() <= TOL_CHAIN;
    let exact_ok = r_sq_exact == rat(2, 17) && rho_sq_exact == rat(2, 19) && Some(state_sq_exact) == rho_sq_closed_exact(3);
    outcome(
        float_ok && exact_ok && scaled_ok,
        format!("r^2 = {r_sq_exact} -> rho^2 = {rho_sq_exact} -> radius^2 = {state_sq_exact}; radius {radius:.15}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("exact inclusion constants", exact_constants),
        ("rho table", rho_table),
        ("polar inner radius", ptp3),
        ("dual-cone inequality suite", inequality_suite_criterion),
        ("lemma Monte Carlo", lemma_monte_carlo),
        ("three-qubit ball consistency", ball_consistency),
        ("radius chain", chain),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("{tag} [{}] {name}: {} ({:.1}s)", i + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
