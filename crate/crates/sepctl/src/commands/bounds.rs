use sepball::conegeo::exact::rat;
use sepball::conegeo::{rho_sequence, RhoSequence};

use crate::error::CliError;
use crate::report::{CertReport, Check};

pub const MAX_K: usize = 600;
const AGREEMENT_TOL: f64 = 1e-12;

pub fn run(k_max: usize) -> Result<CertReport, CliError> {
    if !(3..=MAX_K).contains(&k_max) {
        return Err(CliError::Usage(format!("--k-max must lie in 3..={MAX_K}, got {k_max}")));
    }
    let seq = rho_sequence(k_max)?;
    let mut report = CertReport::new("bounds", 0, k_max - 2, None);
    report.tolerance("recursion_vs_closed_rel", AGREEMENT_TOL);

    let worst = (3..=k_max)
        .map(|k| ((seq.rho_recursion(k) - seq.rho(k)) / seq.rho(k)).abs())
        .fold(0.0, f64::max);
    let bad = (3..=k_max).filter(|&k| ((seq.rho_recursion(k) - seq.rho(k)) / seq.rho(k)).abs() > AGREEMENT_TOL).count();
    report.check(Check::at_most("recursion_vs_closed_rel", worst, AGREEMENT_TOL, k_max - 2, bad));

    let decreasing = (4..=k_max).all(|k| seq.rho(k) < seq.rho(k - 1));
    report.check(Check::flag("strictly_decreasing", decreasing));
    report.check(Check::flag("rho3_sq_is_16/19", seq.rho_sq_exact(3) == Some(rat(16, 19))));
    if k_max >= 4 {
        report.check(Check::flag("rho4_sq_is_32/53", seq.rho_sq_exact(4) == Some(rat(32, 53))));
    }
    let exact_agree = (3..=k_max).all(|k| match (seq.rho_sq_exact(k), seq.rho_sq_exact_recursion(k)) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    });
    report.check(Check::flag("exact_recursion_matches_closed_form", exact_agree));
    report.check(Check::flag("squared_ratio_k3_is_20/19", seq.squared_ratio_exact(3) == Some(rat(20, 19))));

    report.notes.push(format!(
        "improvement over the 4/5-seeded sequence: squared-radius ratio 20/19 at k=3, radius ratio tends to sqrt(18/17) = {:.12}",
        RhoSequence::asymptotic_radius_ratio()
    ));
    report.table = seq.rows();
    Ok(report)
}
