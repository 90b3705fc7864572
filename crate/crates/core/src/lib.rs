pub mod atlas;
pub mod autgroup;
pub mod budget;
pub mod cayley;
pub mod error;
pub mod gbase;
pub mod perm_core;
pub mod suites;

pub use atlas::{AutSet, GroupSpec, IndexedGroup};
pub use autgroup::{AutResult, TypeTag};
pub use budget::Budget;
pub use cayley::CayleyGraph;
pub use error::{Error, Result};
pub use gbase::{GBase, RegSubgroup};
pub use perm_core::{BlockPartition, Perm, PermGroup};
