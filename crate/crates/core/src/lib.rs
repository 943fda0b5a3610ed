//! Desk-scale computation with finite permutation groups and finite
//! relational structures.
//!
//! The crate is organized around a few layers that build on one another:
//!
//! * [`perm`]: permutations, stabilizer chains, subgroup enumeration,
//!   Cayley tables, quotients, and abstract group isomorphism.
//! * [`structure`]: finite relational structures, their automorphism
//!   groups, homogeneity testing, definable and algebraic closure, and
//!   canonical relational presentations of permutation groups.
//! * [`fraisse`]: finitely constrained amalgamation classes, generic
//!   structures grown from them, and symmetry groups of signatures.
//! * [`exaut`]: the expanded symmetry model attached to a structure, a
//!   two-sorted object recording closed sets, local actions, and the
//!   subgroups of the full group they induce.
//! * [`frucht`]: cayley color graphs and plain graphs whose automorphism
//!   group realizes a prescribed finite group, plus the pipeline that
//!   rebuilds the group as the symmetry group of a derived signature.
//! * [`reconstruct`]: recovering a point bijection from an abstract
//!   isomorphism between automorphism groups, and harnesses that stress
//!   the recovery on scrambled structures.

pub mod error;
pub mod exaut;
pub mod fraisse;
pub mod frucht;
pub mod io;
pub mod perm;
pub mod playground;
pub mod reconstruct;
pub mod report;
pub mod structure;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
