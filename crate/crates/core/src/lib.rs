//! Placement delivery arrays for multi-access coded caching with cyclic
//! wrap-around access.
//!
//! A `(K, L, M, N)` multi-access caching system has `K` cache nodes and `K`
//! cache-less users; user `k` reads the `L` consecutive nodes
//! `k, k+1, ..., k+L-1` (indices wrap around the ring of `K` nodes). Each of
//! the `N` files is split into `K` subfiles, every node stores `gamma`
//! subfiles of each file under the consecutive cyclic placement, and delivery
//! is a sequence of XOR multicasts described by a placement delivery array
//! (PDA).
//!
//! The crate provides:
//! - [`constructions::build_scheme`]: PDA constructions covering every
//!   feasible `(K, L, gamma)` with linear subpacketization,
//! - [`pda::verify`]: an independent checker for the PDA axioms,
//! - [`bounds::optimal_gain`]: the best coded caching gain any PDA can reach
//!   under this placement,
//! - [`oracle`]: a brute-force search certifying that bound at small sizes,
//! - [`simulator`]: byte-level placement, delivery, and per-user decoding,
//! - [`baselines`]: closed-form rate/subpacketization of prior schemes and
//!   a comparison-table generator.
//!
//! All user, node, subfile, and symbol indices are 1-based throughout, and
//! rates are exact rationals; there is no floating point anywhere.

pub mod baselines;
pub mod bounds;
pub mod constructions;
mod error;
pub mod modmath;
pub mod oracle;
pub mod params;
pub mod pda;
pub mod placement;
pub mod simulator;

pub use error::Error;
pub use params::{CaseKind, SystemParams};
pub use pda::{Cell, Label, Pda, PdaStats, Provenance, RowId, Violation};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
