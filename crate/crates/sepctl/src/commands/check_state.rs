use std::path::Path;

use rayon::prelude::*;
use sepball::qsep::{ppt_all_bipartitions, psd_margin, witness_pairing, QubitState};
use sepball::rng::{child_seed, gaussian_vec, substream};
use sepball::tensoropt::{dual, dual_boundary_calibrate, DualElement, Tensor3};

use super::certify::embedded_extremal;
use super::tol_warning;
use crate::cli::RunConfig;
use crate::error::CliError;
use crate::report::{CertReport, Check};

pub const DEFAULT_TRIALS: usize = 100;
const MARGIN_TOL: f64 = 1e-9;
const PAIRING_TOL: f64 = 1e-8;
/// Slack on the ball membership test for states written at the radius itself.
const BALL_SLACK: f64 = 1e-12;

pub fn run(path: &Path, cfg: &RunConfig) -> Result<CertReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    let state = QubitState::from_json(&text)?;
    if state.m() != 3 {
        return Err(sepball::Error::QubitCount(state.m()).into());
    }
    let margin_tol = cfg.tol_or(MARGIN_TOL);
    let pairing_tol = cfg.tol_or(PAIRING_TOL);
    let cone_restarts = cfg.restarts.unwrap_or(dual::DEFAULT_RESTARTS);

    let mut report = CertReport::new("check-state", cfg.seed, cfg.trials, cfg.restarts);
    report.tolerance("necessary_margins", margin_tol);
    report.tolerance("witness_pairings", pairing_tol);
    report.tolerance("ball_slack", BALL_SLACK);
    report.warnings.extend(tol_warning(cfg.tol));

    let radius = (16.0f64 / 19.0).sqrt();
    let distance = state.distance_to_identity();
    let inside = distance <= radius + BALL_SLACK;
    report.extremum("distance_to_identity", distance, "Frobenius");
    report.extremum("certified_ball_radius", radius, "sqrt(16/19)");

    let psd = psd_margin(&state);
    let ppt = ppt_all_bipartitions(&state)?;
    let elements = witnesses(cfg, cone_restarts)?;
    let pairings: Vec<f64> = elements.iter().map(|d| witness_pairing(d, &state)).collect::<Result<_, _>>()?;
    let (worst_pair, worst_idx) =
        pairings.iter().enumerate().fold((f64::INFINITY, 0), |(w, wi), (i, &p)| if p < w { (p, i) } else { (w, wi) });

    // Inside the ball every necessary condition is guaranteed, so failures
    // there are violations. Outside it they are findings about the state.
    let counts = |bad: bool| usize::from(inside && bad);
    report.check(Check::at_least("psd_margin", psd, -margin_tol, 1, counts(psd < -margin_tol)));
    for p in &ppt.margins {
        let name = format!("ppt_margin_{}", p.subset.iter().map(|q| q.to_string()).collect::<String>());
        report.check(Check::at_least(&name, p.margin, -margin_tol, 1, counts(p.margin < -margin_tol)));
    }
    let bad_pairs = pairings.iter().filter(|&&p| p < -pairing_tol).count();
    report.check(
        Check::at_least("witness_pairing_min", worst_pair, -pairing_tol, pairings.len(), if inside { bad_pairs } else { 0 })
            .with_detail(format!("worst witness {worst_idx}; {bad_pairs} negative pairings")),
    );

    let verdict = if inside {
        "inside the certified separable ball (closure)".to_string()
    } else if psd < -margin_tol {
        "outside the certified ball; not positive semidefinite".to_string()
    } else if ppt.worst < -margin_tol || bad_pairs > 0 {
        "outside the certified ball; entangled (a necessary condition for separability fails)".to_string()
    } else {
        "outside the certified ball; all checked necessary conditions hold (undecided)".to_string()
    };
    report.notes.push(format!("verdict: {verdict}"));
    report.notes.push("PSD, PPT and witness pairings are necessary conditions for separability, not sufficient ones".into());
    Ok(report)
}

/// Witnesses: the embedded extremal element followed by calibrated random ones.
fn witnesses(cfg: &RunConfig, restarts: usize) -> Result<Vec<DualElement>, CliError> {
    let mut out = vec![DualElement::from_normalized(embedded_extremal(), 0.0)?];
    let random: Vec<_> = (1..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let x = Tensor3::from_vec([4, 4, 4], gaussian_vec(&mut substream(child_seed(cfg.seed, 40, 0), t as u64), 64))?;
            dual_boundary_calibrate(&x, restarts, child_seed(cfg.seed, 41, t as u64))
        })
        .collect();
    for r in random {
        match r {
            Ok(d) => out.push(d),
            Err(sepball::Error::DegenerateCalibration(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}
