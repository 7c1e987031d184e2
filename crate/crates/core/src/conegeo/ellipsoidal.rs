use super::lorentz::Membership;
use crate::error::{Error, Result};
use crate::matan::eigen::sym_eigen;
use crate::matan::{GenMatrix, SymMatrix};

/// Relative eigenvalue floor below which `P` counts as not invertible.
pub const INVERTIBILITY_TOL: f64 = 1e-13;

/// `K_ell(P) ⊂ R^n` with `P` symmetric positive definite of size `n − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipsoidalCone {
    p: SymMatrix,
}

impl EllipsoidalCone {
    pub fn new(p: SymMatrix) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        let eig = sym_eigen(&p);
        if p.n() == 0 || !(eig.min() > INVERTIBILITY_TOL * eig.max().abs()) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { p })
    }

    /// `K_ball^n(r) = K_ell(r⁻² I_{n−1})`.
    pub fn ball(n: usize, r: f64) -> Result<Self> {
        if n < 2 || !(r > 0.0) || !r.is_finite() {
            return Err(Error::OutOfRange(format!("ball cone n = {n}, r = {r}")));
        }
        Self::new(SymMatrix::scaled_identity(n - 1, 1.0 / (r * r)))
    }

    /// `L_n`.
    pub fn lorentz(n: usize) -> Self {
        Self::ball(n, 1.0).expect("n ≥ 2")
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.p.n() + 1
    }

    pub fn shape(&self) -> &SymMatrix {
        &self.p
    }
}

/// Margin `x_0 − √(xᵀ P x)`.
pub fn ellipsoidal_contains(k: &EllipsoidalCone, x: &[f64]) -> Result<Membership> {
    if x.len() != k.n() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for cone in R^{}", x.len(), k.n())));
    }
    let q = k.p.quad_form(&x[1..]).max(0.0);
    let margin = x[0] - q.sqrt();
    Ok(Membership { inside: margin >= 0.0, margin })
}

/// `K_ell(P)^* = K_ell(P⁻¹)`.
pub fn ellipsoidal_dual(k: &EllipsoidalCone) -> Result<EllipsoidalCone> {
    EllipsoidalCone::new(k.p.inverse_spd()?)
}

/// Splits an axis-preserving map `A = diag(a, B)` with `a > 0`.
fn split_axis_preserving(a: &GenMatrix, n: usize) -> Result<(f64, GenMatrix)> {
    if a.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!("map {:?} for cone in R^{n}", a.shape())));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = a.frobenius_norm();
    let leak = (1..n).map(|i| a[(0, i)].abs().max(a[(i, 0)].abs())).fold(0.0, f64::max);
    if leak > 1e-14 * scale {
        return Err(Error::NotAxisPreserving);
    }
    let a00 = a[(0, 0)];
    if a00 == 0.0 {
        return Err(Error::Singular);
    }
    if a00 < 0.0 {
        return Err(Error::NotAxisPreserving);
    }
    let b = a.submatrix(1, 1, n - 1, n - 1);
    Ok((a00, b))
}

/// `A[K]` for an axis-preserving `A`: `K_ell(a² B⁻ᵀ P B⁻¹)`.
pub fn cone_image(a: &GenMatrix, k: &EllipsoidalCone) -> Result<EllipsoidalCone> {
    let (a00, b) = split_axis_preserving(a, k.n())?;
    let binv = b.inverse()?;
    let p = k.p.to_general();
    let img = binv.transpose().matmul(&p).matmul(&binv).scale(a00 * a00);
    EllipsoidalCone::new(SymMatrix::symmetric_part(&img))
}

/// `(A[K])^*` computed as the image `A⁻ᵀ[K^*]`.
///
/// With `A = diag(a, B)` and `K^* = K_ell(P⁻¹)`, a point `y` lies in
/// `A⁻ᵀ[K^*]` iff `Aᵀ y ∈ K^*`, which is `K_ell(a⁻² B P⁻¹ Bᵀ)`.
pub fn cone_image_dual(a: &GenMatrix, k: &EllipsoidalCone) -> Result<EllipsoidalCone> {
    let (a00, b) = split_axis_preserving(a, k.n())?;
    // Singularity is a property of A regardless of the route taken.
    b.inverse()?;
    let dual = ellipsoidal_dual(k)?;
    let pinv = dual.p.to_general();
    let out = b.matmul(&pinv).matmul(&b.transpose()).scale(1.0 / (a00 * a00));
    EllipsoidalCone::new(SymMatrix::symmetric_part(&out))
}
