//! Coordinates in the normalized Pauli basis.
//!
//! Each factor uses `(I, σx, σy, σz)/√2`, and products are ordered
//! Kronecker-major: the coordinate index is `Σ p_q 4^{m−q}` with qubit 1 most
//! significant. The map is an isometry from Hermitian matrices with the
//! Frobenius norm onto `R^{4^m}`, and `I` maps to `2^{m/2} e_{0…0}`.

use num_complex::Complex64;
use serde::Serialize;

use super::state::QubitState;
use crate::error::{Error, Result};
use crate::tensoropt::{DualElement, Tensor3};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PauliCoords {
    pub m: usize,
    pub coords: Vec<f64>,
}

impl PauliCoords {
    pub fn new(m: usize, coords: Vec<f64>) -> Result<Self> {
        if m == 0 || m > super::state::MAX_QUBITS {
            return Err(Error::QubitCount(m));
        }
        if coords.len() != 1 << (2 * m) {
            return Err(Error::DimensionMismatch(format!("{} Pauli coordinates for {m} qubits", coords.len())));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { m, coords })
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// The three-qubit coordinates as a `4×4×4` tensor.
    pub fn to_tensor(&self) -> Result<Tensor3> {
        if self.m != 3 {
            return Err(Error::QubitCount(self.m));
        }
        Tensor3::from_vec([4, 4, 4], self.coords.clone())
    }

    pub fn from_tensor(t: &Tensor3) -> Result<Self> {
        if t.dims() != [4, 4, 4] {
            return Err(Error::DimensionMismatch(format!("expected dims [4, 4, 4], got {:?}", t.dims())));
        }
        Self::new(3, t.coords().to_vec())
    }
}

/// Column flip mask and per-row phases of one Pauli string.
///
/// Every Pauli string `P` is monomial: row `r` has a single nonzero entry,
/// at column `r ^ flip`, with value `phase(r)`.
struct PauliString {
    flip: usize,
    /// Bits where the factor is σy or σz, which contribute a sign by row bit.
    z_mask: usize,
    y_count: u32,
}

impl PauliString {
    fn from_index(m: usize, idx: usize) -> Self {
        let (mut flip, mut z_mask, mut y_count) = (0, 0, 0);
        for q in 0..m {
            let p = (idx >> (2 * (m - 1 - q))) & 3;
            let bit = 1 << (m - 1 - q);
            match p {
                1 => flip |= bit,
                2 => {
                    flip |= bit;
                    z_mask |= bit;
                    y_count += 1;
                }
                3 => z_mask |= bit,
                _ => {}
            }
        }
        Self { flip, z_mask, y_count }
    }

    /// `P[r, r ^ flip]`. For σy, `⟨0|σy|1⟩ = −i` and `⟨1|σy|0⟩ = i`, i.e.
    /// `−i·(−1)^{row bit}`; σz contributes `(−1)^{row bit}`.
    fn phase(&self, r: usize) -> Complex64 {
        let sign = if (r & self.z_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        // (−i)^{y_count}
        let unit = match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        unit * sign
    }
}

pub fn to_pauli(s: &QubitState) -> PauliCoords {
    let m = s.m();
    let n = s.dim();
    let norm = (n as f64).sqrt().recip();
    let coords = (0..n * n)
        .map(|idx| {
            let p = PauliString::from_index(m, idx);
            // tr(P H) = Σ_r P[r, r^f] H[r^f, r]
            let tr: Complex64 = (0..n).map(|r| p.phase(r) * s.get(r ^ p.flip, r)).sum();
            tr.re * norm
        })
        .collect();
    PauliCoords { m, coords }
}

pub fn from_pauli(p: &PauliCoords) -> QubitState {
    let m = p.m;
    let n = 1usize << m;
    let norm = (n as f64).sqrt().recip();
    let mut h = vec![Complex64::default(); n * n];
    for (idx, &c) in p.coords.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let ps = PauliString::from_index(m, idx);
        for r in 0..n {
            h[r * n + (r ^ ps.flip)] += ps.phase(r) * (c * norm);
        }
    }
    QubitState::from_fn_unchecked(m, |r, c| h[r * n + c])
}

/// `⟨d, to_pauli(s)⟩`; nonnegative whenever `s` is a three-qubit separable state.
pub fn witness_pairing(d: &DualElement, s: &QubitState) -> Result<f64> {
    if s.m() != 3 {
        return Err(Error::QubitCount(s.m()));
    }
    let t = to_pauli(s).to_tensor()?;
    d.t.dot(&t)
}
