//! Dense real matrix kernel and pencil inequalities.

pub mod dense;
pub mod eigen;
pub mod lemmas;
pub mod pencil;
pub mod sphere;
pub mod svd;
pub mod trig;

pub use dense::{GenMatrix, SymMatrix};
pub use eigen::{min_eigenvalue, sym_eigen, sym_eigenvalues, SymEigen};
pub use lemmas::{block_spectrum, trace_pairing_bound};
pub use pencil::{m012_bound, pencil_gain, pencil_margin, pencil_norm_bound, MatrixPencil, PencilMargin};
pub use svd::{singular_values, svd, Svd};
pub use trig::{
    trig_lmi_block, trig_lmi_search, trig_lmi_verify, trig_pencil_min_eig, LmiSearch, LmiSearchOptions,
    TrigPencilMin,
};
