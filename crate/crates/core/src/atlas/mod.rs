//! Named almost simple groups indexed as vertex sets, with their standard
//! permutation objects.

mod aut;
mod indexed;
mod objects;
mod spec;

pub use aut::AutSet;
pub use indexed::{ConjClass, IndexedGroup, DEFAULT_ELEMENT_CAP};
pub use objects::{
    d2_contains, d2_decompose, d2_expected_order, d2_group, d2_order_bound, diagonal_subgroup,
    fgs_involution, g_star, inversion_perm, left_mult, left_right, regular_actions, right_mult,
    FgsInvolution,
};
pub use spec::{GroupSpec, SUPPORTED_PSL2_Q};
