//! Hermitian multi-qubit matrices, their normalized Pauli coordinates, and
//! necessary conditions for separability (PSD, PPT, dual-witness pairings).

pub mod pauli;
pub mod ppt;
pub mod sample;
pub mod state;

pub use pauli::{from_pauli, to_pauli, witness_pairing, PauliCoords};
pub use ppt::{bipartition_subsets, partial_transpose, ppt_all_bipartitions, ppt_bipartitions, PptMargin, PptReport};
pub use sample::{
    ghz_projector, necessary_margin, ppt_violation_search, random_direction, sample_ball_state, ViolationSearch,
    VIOLATION_TOL,
};
pub use state::{min_eigenpair, psd_margin, QubitState};
