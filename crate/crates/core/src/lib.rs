//! Finite rings, finite groups and exhaustive computation in their group
//! algebras: one-sided ideals, idempotents, linear complementary pairs and
//! checkability.

pub mod chk;
pub mod error;
pub mod finring;
pub mod galg;
pub mod grp;
pub mod ideals;
pub mod idem;
pub mod lcp;
pub mod verify;

pub use error::{GlabError, Result};
pub use finring::{Ring, RingElem, RingSpec};
pub use galg::{AlgElem, Bounds, GroupAlgebra, Idx};
pub use grp::{FiniteGroup, GroupSpec};
pub use ideals::{Side, SidedIdeal};
