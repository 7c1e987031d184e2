use rayon::prelude::*;
use sepball::matan::pencil_margin;
use sepball::rng::{child_seed, gaussian_vec, substream};
use sepball::tensoropt::{
    coefficient_identities, cone_trilinear_min, dual, dual_boundary_calibrate, extremal_element, inequality_suite,
    injective, polar_membership, prop_pencil, ptp3_inner_radius_search, symmetrize_dd_id, DualElement, Ptp3Options,
    Tensor3,
};

use super::{fmt_vec, tol_warning};
use crate::cli::RunConfig;
use crate::error::CliError;
use crate::report::{CertReport, Check};

pub const DEFAULT_TRIALS: usize = 1000;
const RADIUS_TOL: f64 = 1e-6;
const INEQUALITY_TOL: f64 = 1e-6;
const PENCIL_TOL: f64 = 1e-7;
const PENCIL_SPOT_CHECKS: usize = 32;
const PENCIL_RESTARTS: usize = 16;

/// The extremal polar element embedded on the all-nonzero coordinates with
/// `x_000 = 1`. Its trilinear form is `1 + w*(u, v, w) ≥ 0`, so it sits on
/// the dual-cone boundary and makes the per-axis and averaged forms tight.
pub fn embedded_extremal() -> Tensor3 {
    let (w, _) = extremal_element();
    Tensor3::from_fn([4, 4, 4], |i, j, k| match (i, j, k) {
        (0, 0, 0) => 1.0,
        (i, j, k) if i > 0 && j > 0 && k > 0 => w.get(i - 1, j - 1, k - 1),
        _ => 0.0,
    })
    .expect("valid dims")
}

pub fn run(cfg: &RunConfig, inject_scale: Option<f64>) -> Result<CertReport, CliError> {
    let inj_restarts = cfg.restarts.unwrap_or(injective::DEFAULT_RESTARTS);
    let cone_restarts = cfg.restarts.unwrap_or(dual::DEFAULT_RESTARTS);
    let radius_tol = cfg.tol_or(RADIUS_TOL);
    let ineq_tol = cfg.tol_or(INEQUALITY_TOL);
    let pencil_tol = cfg.tol_or(PENCIL_TOL);

    let mut report = CertReport::new("certify", cfg.seed, cfg.trials, cfg.restarts);
    report.tolerance("polar_radius", radius_tol);
    report.tolerance("inequalities", ineq_tol);
    report.tolerance("prop_pencil_margin", pencil_tol);
    report.warnings.extend(tol_warning(cfg.tol));

    // Polar inner radius.
    let search = ptp3_inner_radius_search(&Ptp3Options {
        trials: cfg.trials,
        restarts: inj_restarts,
        seed: cfg.seed,
        seeded: true,
    });
    let sqrt7 = 7f64.sqrt();
    report.extremum("polar_boundary_norm", search.max_norm, format!("coords {}", fmt_vec(search.argmax.coords())));
    report.check(Check::near("polar_boundary_max_norm", search.max_norm, sqrt7, radius_tol));
    report.check(Check::near("polar_boundary_argmax_injective", search.argmax_injective, 1.0, radius_tol));
    let random_bad = usize::from(search.random_max_norm > sqrt7 + radius_tol);
    report.check(
        Check::at_most("random_polar_boundary_norm", search.random_max_norm, sqrt7 + radius_tol, search.random_count, random_bad)
            .with_detail("largest |w| over random boundary elements w/|w|_inj"),
    );

    if let Some(s) = inject_scale {
        let (w, _) = extremal_element();
        let injected = w.scale(s);
        let margin = polar_membership(&injected, inj_restarts, child_seed(cfg.seed, 11, 0))?;
        report.extremum("injected_polar_membership", margin, format!("{s}·w*"));
        if margin < -radius_tol {
            report.warnings.push(format!(
                "injected element {s}·w* is outside the polar (membership margin {margin:.9}); it is not a boundary element, so the radius bound does not apply to it"
            ));
        } else {
            report.notes.push(format!("injected element {s}·w* lies in the polar (membership margin {margin:.9})"));
        }
    }

    // Dual-cone inequality campaign.
    let ids = coefficient_identities();
    report.check(Check::flag("coefficient_identities_exact", ids.all()).with_detail(format!("{ids:?}")));

    let outcomes: Vec<Result<DualElement, sepball::Error>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let x = Tensor3::from_vec([4, 4, 4], gaussian_vec(&mut substream(child_seed(cfg.seed, 20, 0), t as u64), 64))?;
            dual_boundary_calibrate(&x, cone_restarts, child_seed(cfg.seed, 21, t as u64))
        })
        .collect();
    let mut elements = Vec::with_capacity(outcomes.len() + 1);
    let embedded = embedded_extremal();
    let emin = cone_trilinear_min(&embedded, cone_restarts, child_seed(cfg.seed, 22, 0))?.value;
    elements.push(DualElement::from_normalized(embedded, emin)?);
    let mut degenerate = 0;
    for o in outcomes {
        match o {
            Ok(d) => elements.push(d),
            Err(sepball::Error::DegenerateCalibration(_)) => degenerate += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if degenerate > 0 {
        report.notes.push(format!("{degenerate} random tensors calibrated to a degenerate root and were skipped"));
    }

    let calib_worst = elements.iter().map(|d| d.calibration).fold(f64::INFINITY, f64::min);
    let calib_bad = elements.iter().filter(|d| d.calibration < -ineq_tol).count();
    report.check(Check::at_least("dual_calibration_recheck", calib_worst, -ineq_tol, elements.len(), calib_bad));

    let suites: Vec<_> = elements.iter().map(inequality_suite).collect::<Result<_, _>>()?;
    let names: Vec<String> = suites[0].all().iter().map(|i| i.name.clone()).collect();
    for (idx, name) in names.iter().enumerate() {
        let (mut worst, mut worst_at, mut bad) = (f64::INFINITY, 0, 0);
        for (e, s) in suites.iter().enumerate() {
            let m = s.all()[idx].margin;
            if m < worst {
                worst = m;
                worst_at = e;
            }
            if m < -ineq_tol {
                bad += 1;
            }
        }
        let lhs_max = suites.iter().map(|s| s.all()[idx].lhs).fold(f64::NEG_INFINITY, f64::max);
        report.check(
            Check::at_least(&format!("ineq_{name}_margin"), worst, -ineq_tol, suites.len(), bad)
                .with_detail(format!("max lhs {lhs_max:.9}, rhs {:.6}, worst element {worst_at}", suites[0].all()[idx].rhs)),
        );
    }
    report.notes.push("element 0 of the inequality campaign is the embedded extremal element, tight in the per-axis and averaged forms".into());

    // Prop-reduction pencil spot checks.
    let spots: Vec<f64> = elements
        .par_iter()
        .take(PENCIL_SPOT_CHECKS)
        .enumerate()
        .map(|(i, d)| {
            let y = symmetrize_dd_id(&d.t).expect("4x4x4");
            let p = prop_pencil(&y).expect("finite");
            pencil_margin(&p, PENCIL_RESTARTS, child_seed(cfg.seed, 30, i as u64)).worst
        })
        .collect();
    let spot_worst = spots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spot_bad = spots.iter().filter(|&&m| m > pencil_tol).count();
    report.check(Check::at_most("prop_pencil_margin", spot_worst, pencil_tol, spots.len(), spot_bad));

    report.notes.push(
        "polar and dual-cone memberships are certified by multi-start sphere optimization: maxima found are lower bounds and minima upper bounds".into(),
    );
    Ok(report)
}
