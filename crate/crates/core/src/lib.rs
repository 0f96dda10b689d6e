//! Finite theta groups `μ_n × (K ⊕ K̂)` and their abelian subgroups.
//!
//! The groups `G_n = Heis(Z_n)` of order `n³` have no abelian subgroup of index
//! below `n`. Attached to the two diffeomorphism classes of orientable
//! `S²`-bundles over `T²` (distinguished by the parity of the Chern number),
//! they give finite subgroups of the diffeomorphism group with unbounded
//! minimal abelian index. This crate builds those groups exactly, checks the
//! bound two independent ways and emits refutation certificates for candidate
//! Jordan constants.
//!
//! - [`abelian`]: invariant-factor groups, characters, the evaluation pairing
//! - [`heis`]: the theta group law
//! - [`lattice`]: subgroup engine and the exhaustive abelian-subgroup oracle
//! - [`symplectic`]: commutator pairing, isotropic subgroups, the structural bound
//! - [`bundlemodel`]: torsion model, parity classes, certificates, reports
//! - [`cli`]: the `theta-jordan` command line front-end

pub mod abelian;
pub mod bundlemodel;
pub mod cli;
pub mod error;
pub mod heis;
pub mod lattice;
pub mod report;
pub mod symplectic;

pub use abelian::{make_group, AbElement, Character, FiniteAbelianGroup, RootExp};
pub use error::{Error, Result};
pub use heis::{ThetaElement, ThetaGroup};
pub use lattice::{ConcreteGroup, Subgroup};
