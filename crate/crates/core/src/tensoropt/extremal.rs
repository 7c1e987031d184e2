//! The extremal element of the polar of `B ⊗ B ⊗ B` in `R^{3×3×3}`.

use super::tensor::Tensor3;
use crate::matan::GenMatrix;

/// The three slices `M_1, M_2, M_3`.
pub fn extremal_slices() -> [GenMatrix; 3] {
    [
        GenMatrix::diag(&[1.0, -1.0, -1.0]),
        GenMatrix::from_rows(&[&[0.0, -1.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]),
        GenMatrix::from_rows(&[&[0.0, 0.0, -1.0], &[0.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]]),
    ]
}

/// `(w*, x*)` with `w*_{jkl} = (M_l)_{jk}` and `x* = w*/7`.
///
/// `|w*|² = 7` and `‖w*‖_inj = 1`, so `w*` is a boundary point of the polar
/// at the largest possible Euclidean norm and `x*` the matching boundary
/// point of the projective product at the smallest.
pub fn extremal_element() -> (Tensor3, Tensor3) {
    let m = extremal_slices();
    let w = Tensor3::from_fn([3, 3, 3], |j, k, l| m[l][(j, k)]).expect("valid dims");
    let x = w.scale(1.0 / 7.0);
    (w, x)
}
