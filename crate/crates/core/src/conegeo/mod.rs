//! Lorentz and ellipsoidal cone calculus.
//!
//! A standardized ellipsoidal cone in `R^n` is
//! `K_ell(P) = {(x_0, x) : x_0 ≥ √(xᵀ P x)}` with `P ≻ 0` of size `n−1`.
//! The ball cone `K_ball^n(r)` is `K_ell(r⁻² I)` and the Lorentz cone is
//! `K_ball^n(1)`.

pub mod ellipsoidal;
pub mod exact;
pub mod lorentz;
pub mod radii;
pub mod rho;

pub use ellipsoidal::{cone_image, cone_image_dual, ellipsoidal_contains, ellipsoidal_dual, EllipsoidalCone};
pub use exact::Rational;
pub use lorentz::{lorentz_contains, lorentz_map_positive, Membership, MapPositivity};
pub use radii::{
    ball_to_cone_param, cone_to_ball_param, inclusion_radius, inclusion_radius_sq_exact, matrix_ball_radius,
    BallConeParam,
};
pub use rho::{rho_sequence, RhoSequence};
