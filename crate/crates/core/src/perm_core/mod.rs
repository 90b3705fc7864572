//! Permutations and permutation groups on `{0..n-1}`.

mod chain;
mod conjugator;
mod group;
mod partition;
mod perm;

pub use chain::RANDOM_DEGREE_THRESHOLD;
pub use conjugator::conjugator_from_isomorphism;
pub use group::{orbits, subgroup_closure, PermGroup};
pub use partition::BlockPartition;
pub use perm::Perm;
