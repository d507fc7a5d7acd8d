//! Finite groups, traces on their subgroups, induction of traces, and
//! Hilbert–Schmidt distances between unitary-valued maps.
//!
//! Trace values are `f64` complex numbers compared with a fixed tolerance
//! (see [`VALUE_TOL`]); positive definiteness is decided from the smallest
//! Gram eigenvalue computed by Jacobi rotations.

mod approx;
mod characters;
mod fuzz;
mod group;
mod hs;
mod induce;
mod jacobi;
mod subgroup;
mod trace;

pub use approx::{finite_dim_approximation, LatticeProductElement};
pub use characters::{dual_group_angles, rational_combination_check, CharacterTable, Decomposition};
pub use fuzz::{random_chain, random_small_group, random_trace, small_presets};
pub use group::{FiniteGroup, Permutation};
pub use hs::{
    hom_defect, hs_distance, hs_norm, nearest_hom_distance, random_unitary, unitarity_defect, unitary_near_identity,
    AlmostHom, CMatrix, UNITARY_TOL,
};
pub use induce::{induce_trace, induce_trace_with, induction_in_stages_check, trace_stabilizer, trivial_extension, Transversal};
pub use jacobi::{hermitian_eigenvalues, symmetric_eigenvalues};
pub use subgroup::Subgroup;
pub use trace::{is_trace, TraceCheck, TraceFn, GRAM_CAP, VALUE_TOL};
