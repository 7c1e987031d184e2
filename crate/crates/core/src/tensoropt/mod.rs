//! Order-3 tensor geometry over `R^3` and `R^4` factors: injective norms,
//! the polar of the unit-ball projective product, and dual-cone elements of
//! `L_4 ⊗ L_4 ⊗ L_4` together with the quadratic inequalities they satisfy.

pub mod dual;
pub mod extremal;
pub mod inequalities;
pub mod injective;
pub mod tensor;

pub use dual::{cone_trilinear_min, dual_boundary_calibrate, prop_pencil, symmetrize_dd_id, ConeMin, DualElement};
pub use extremal::{extremal_element, extremal_slices};
pub use inequalities::{coefficient_identities, inequality_suite, ClassMass, CoefficientCheck, Inequality, InequalityReport};
pub use injective::{
    injective_norm, polar_membership, ptp3_inner_radius_search, to_polar_boundary, InjectiveNorm, Ptp3Options,
    Ptp3Search,
};
pub use tensor::{apply_triple_map, SliceView, Tensor3};
