pub mod bounds;
pub mod certify;
pub mod check_state;
pub mod lemmas;

/// Compact vector rendering for `argmax` fields.
pub(crate) fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Tolerances below this sit under the floating-point floor of the checks.
pub(crate) const TOL_FLOOR: f64 = 1e-14;

pub(crate) fn tol_warning(tol: Option<f64>) -> Option<String> {
    tol.filter(|&t| t < TOL_FLOOR).map(|t| {
        format!("tolerance {t:e} is below the floating-point floor ({TOL_FLOOR:e}); failures at this tolerance are rounding, not counterexamples")
    })
}
