//! Separable balls around the maximally mixed multi-qubit state.
//!
//! The crate is split along the lines of the underlying geometry:
//!
//! * [`matan`]: small dense real matrices, Jacobi eigen/SVD kernels and the
//!   matrix inequalities that bound the norm of a matrix pencil.
//! * [`conegeo`]: Lorentz and ellipsoidal cones, radius conversions, pairwise
//!   inclusion radii and the multi-qubit radius sequence.
//! * [`tensoropt`]: order-3 coordinate tensors, injective norm, the polar of
//!   the triple projective tensor product of unit balls and the dual of the
//!   triple Lorentz separable cone.
//! * [`qsep`]: Hermitian multi-qubit matrices, the normalized Pauli
//!   coordinate isometry, partial transposes and ball sampling.
//!
//! Every randomized routine takes an explicit seed; runs are reproducible.

pub mod conegeo;
pub mod error;
pub mod matan;
pub mod qsep;
pub mod rng;
pub mod tensoropt;

pub use error::{Error, Result};
