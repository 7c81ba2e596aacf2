//! Exact-arithmetic toolkit for the small nilpotent orbits of `so(2n, C)`
//! (type D), the component groups of their centralizers in `SO` and `Spin`,
//! and the K-type spectra of the attached unipotent representations.
//!
//! Everything is computed over exact integers, rationals, or Gaussian
//! rationals; there is no floating point anywhere in the crate.
//!
//! The main subsystems:
//!
//! * [`weight`] / [`rootsys`] — type-D weight combinatorics: dominance,
//!   Weyl dimension, Freudenthal weight multiplicities, tensor product
//!   decomposition, the Pieri-type rule for symmetric powers of the
//!   standard `sp`-module, and the Helgason fixed-vector criteria.
//! * [`orbits`] — partitions labelling nilpotent orbits, the small-orbit
//!   list, dimension formulas, `sl(2)`-triples, graded centralizers,
//!   component groups, and infinitesimal characters.
//! * [`clifford`] — exact Clifford-algebra arithmetic, the `Ep` elements
//!   lifting blockwise `-Id`, and executable component-group tables.
//! * [`spectra`] — closed-form K-type spectrum families, the BGG/Pieri
//!   analysis, and the matchup verifier.
//! * [`oracle`] — brute-force verification through explicit matrix models
//!   and character-theoretic branching.
//! * [`report`] — stable structured reports backing the CLI.

pub mod clifford;
pub mod linalg;
pub mod oracle;
pub mod orbits;
pub mod report;
pub mod rootsys;
pub mod spectra;
pub mod weight;

pub use weight::{Half, Parity, Weight};

/// Capacity bounds for the character and matrix oracles.
#[derive(Debug, Clone, Copy)]
pub struct Capacity {
    /// Largest admissible character table size (product of dimensions for
    /// tensor decompositions).
    pub d_char: u128,
    /// Largest admissible matrix-model dimension.
    pub d_mat: u64,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            d_char: 200_000,
            d_mat: 4_000,
        }
    }
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unsupported orbit label: {0}")]
    UnsupportedOrbit(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
