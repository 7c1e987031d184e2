//! Partial transposes and the PPT necessary condition for separability.

use serde::Serialize;

use super::state::{psd_margin, QubitState};
use crate::error::{Error, Result};

/// Bit mask for a 1-based qubit subset; qubit 1 is the most significant bit.
pub fn subset_mask(m: usize, subset: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &q in subset {
        if q == 0 || q > m {
            return Err(Error::BadSubset(format!("qubit {q} outside 1..={m}")));
        }
        let bit = 1 << (m - q);
        if mask & bit != 0 {
            return Err(Error::BadSubset(format!("qubit {q} listed twice")));
        }
        mask |= bit;
    }
    Ok(mask)
}

/// Transposes the tensor factors of the listed qubits.
pub fn partial_transpose(s: &QubitState, subset: &[usize]) -> Result<QubitState> {
    let mask = subset_mask(s.m(), subset)?;
    Ok(partial_transpose_mask(s, mask))
}

pub(crate) fn partial_transpose_mask(s: &QubitState, mask: usize) -> QubitState {
    let keep = !mask;
    QubitState::from_fn_unchecked(s.m(), |r, c| {
        let r2 = (r & keep) | (c & mask);
        let c2 = (c & keep) | (r & mask);
        s.get(r2, c2)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PptMargin {
    /// 1-based qubits transposed.
    pub subset: Vec<usize>,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PptReport {
    pub margins: Vec<PptMargin>,
    pub worst: f64,
}

/// One subset per bipartition: the smaller side, or the side holding
/// qubit 1 when both sides are equal. Transposing the complement gives the
/// full transpose of the same matrix, hence the same spectrum.
pub fn bipartition_subsets(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for bits in 1..(1usize << m) - 1 {
        let subset: Vec<usize> = (1..=m).filter(|&q| bits & (1 << (q - 1)) != 0).collect();
        let k = subset.len();
        if 2 * k < m || (2 * k == m && subset[0] == 1) {
            out.push(subset);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// PSD margins of the partial transposes over every bipartition.
pub fn ppt_bipartitions(s: &QubitState) -> Result<PptReport> {
    if s.m() < 2 {
        return Err(Error::QubitCount(s.m()));
    }
    let margins: Vec<PptMargin> = bipartition_subsets(s.m())
        .into_iter()
        .map(|subset| {
            let pt = partial_transpose(s, &subset).expect("valid subset");
            PptMargin { subset, margin: psd_margin(&pt) }
        })
        .collect();
    let worst = margins.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
    Ok(PptReport { margins, worst })
}

/// The three bipartitions `1|23`, `2|13`, `3|12` of a three-qubit state.
pub fn ppt_all_bipartitions(s: &QubitState) -> Result<PptReport> {
    if s.m() != 3 {
        return Err(Error::QubitCount(s.m()));
    }
    ppt_bipartitions(s)
}
