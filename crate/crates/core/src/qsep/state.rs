//! Hermitian matrices on `m` qubits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matan::{min_eigenvalue, sym_eigen, SymMatrix};

/// Hermiticity tolerance for constructed states.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Hermiticity tolerance for states read from files.
pub const LOAD_TOL: f64 = 1e-10;
pub const MAX_QUBITS: usize = 8;

/// A Hermitian `2^m × 2^m` matrix, row-major. Qubit 1 is the most
/// significant bit of the row and column index.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    m: usize,
    h: Vec<Complex64>,
}

fn check_qubits(m: usize) -> Result<usize> {
    if m == 0 || m > MAX_QUBITS {
        return Err(Error::QubitCount(m));
    }
    Ok(1 << m)
}

impl QubitState {
    /// Validates shape, finiteness and `|H − H†|_max ≤ tol · max(1, |H|_max)`,
    /// then stores the exact Hermitian part.
    pub fn with_tolerance(m: usize, h: Vec<Complex64>, tol: f64) -> Result<Self> {
        let n = check_qubits(m)?;
        if h.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for {m} qubits", h.len())));
        }
        if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut residual = 0.0f64;
        for r in 0..n {
            for c in 0..=r {
                residual = residual.max((h[r * n + c] - h[c * n + r].conj()).norm());
            }
        }
        if residual > tol * scale {
            return Err(Error::NotHermitian(residual));
        }
        let mut s = Self { m, h };
        s.hermitianize();
        Ok(s)
    }

    pub fn new(m: usize, h: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(m, h, HERMITIAN_TOL)
    }

    pub fn identity(m: usize) -> Result<Self> {
        check_qubits(m)?;
        Ok(Self::from_fn_unchecked(m, |r, c| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::default() }))
    }

    pub fn diag(m: usize, values: &[f64]) -> Result<Self> {
        let n = check_qubits(m)?;
        if values.len() != n {
            return Err(Error::DimensionMismatch(format!("{} diagonal values for {m} qubits", values.len())));
        }
        Self::new(m, (0..n * n).map(|i| if i / n == i % n { Complex64::new(values[i / n], 0.0) } else { Complex64::default() }).collect())
    }

    /// `|ψ⟩⟨ψ|` for an amplitude vector of length `2^m`.
    pub fn projector(psi: &[Complex64]) -> Result<Self> {
        let n = psi.len();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::DimensionMismatch(format!("amplitude vector of length {n}")));
        }
        let m = n.trailing_zeros() as usize;
        check_qubits(m)?;
        Ok(Self::from_fn_unchecked(m, |r, c| psi[r] * psi[c].conj()))
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let m = self.m + other.m;
        check_qubits(m)?;
        let nb = other.dim();
        Ok(Self::from_fn_unchecked(m, |r, c| self.get(r / nb, c / nb) * other.get(r % nb, c % nb)))
    }

    /// Callers guarantee `f` is Hermitian up to rounding; the result is hermitianized.
    pub(crate) fn from_fn_unchecked(m: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = 1 << m;
        let mut h = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                h.push(f(r, c));
            }
        }
        let mut s = Self { m, h };
        s.hermitianize();
        s
    }

    fn hermitianize(&mut self) {
        let n = self.dim();
        for r in 0..n {
            self.h[r * n + r].im = 0.0;
            for c in 0..r {
                let avg = (self.h[r * n + c] + self.h[c * n + r].conj()) * 0.5;
                self.h[r * n + c] = avg;
                self.h[c * n + r] = avg.conj();
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.h[r * self.dim() + c]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.h
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real Frobenius inner product `Re tr(A† B)`; exact for Hermitian pairs.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.h.iter().zip(&other.h).map(|(a, b)| (a.conj() * b).re).sum())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!("{} vs {} qubits", self.m, other.m)));
        }
        Ok(())
    }

    pub fn add_scaled(&self, s: f64, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { m: self.m, h: self.h.iter().zip(&other.h).map(|(a, b)| a + b * s).collect() })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { m: self.m, h: self.h.iter().map(|a| a * s).collect() }
    }

    /// Frobenius distance to the identity.
    pub fn distance_to_identity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                let d = if r == c { self.get(r, c) - 1.0 } else { self.get(r, c) };
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `[[A, −B], [B, A]]` for `H = A + iB`; its spectrum is that of `H`, doubled.
    pub fn real_embedding(&self) -> SymMatrix {
        let n = self.dim();
        SymMatrix::from_fn(2 * n, |i, j| {
            let z = self.get(i % n, j % n);
            match (i >= n, j >= n) {
                (false, false) | (true, true) => z.re,
                (true, false) => z.im,
                (false, true) => -z.im,
            }
        })
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn psd_margin(s: &QubitState) -> f64 {
    min_eigenvalue(&s.real_embedding())
}

/// Smallest eigenvalue with a unit eigenvector.
pub fn min_eigenpair(s: &QubitState) -> (f64, Vec<Complex64>) {
    let n = s.dim();
    let eig = sym_eigen(&s.real_embedding());
    let v = eig.vector(0);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (eig.values[0], (0..n).map(|i| Complex64::new(v[i], v[i + n]) / norm).collect())
}

/// Accepts row-major flat arrays or arrays of rows.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entries {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

impl Entries {
    fn flatten(self, n: usize, what: &str) -> Result<Vec<f64>> {
        let flat = match self {
            Entries::Flat(v) => v,
            Entries::Nested(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Format(format!("\"{what}\" must be {n} rows of {n} values")));
                }
                rows.into_iter().flatten().collect()
            }
        };
        if flat.len() != n * n {
            return Err(Error::Format(format!("\"{what}\" has {} values, expected {}", flat.len(), n * n)));
        }
        Ok(flat)
    }
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    m: usize,
    re: Entries,
    im: Entries,
}

impl QubitState {
    /// Parses `{"m": .., "re": [..], "im": [..]}`, validating Hermiticity at [`LOAD_TOL`].
    pub fn from_json(text: &str) -> Result<Self> {
        let f: StateFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let n = check_qubits(f.m)?;
        let re = f.re.flatten(n, "re")?;
        let im = f.im.flatten(n, "im")?;
        Self::with_tolerance(f.m, re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(), LOAD_TOL)
    }

    pub fn to_json(&self) -> String {
        let f = StateFile {
            m: self.m,
            re: Entries::Flat(self.h.iter().map(|z| z.re).collect()),
            im: Entries::Flat(self.h.iter().map(|z| z.im).collect()),
        };
        serde_json::to_string(&f).expect("plain data serializes")
    }
}
