//! Exact computation of canonical basis vectors in the level-one Fock space
//! representation of the quantum affine algebra of type A, and the block
//! decomposition matrices they encode.
//!
//! Everything here is exact: coefficients are Laurent polynomials in `v` with
//! arbitrary-precision integer coefficients, and partitions are manipulated
//! through their bead (abacus) presentations. The crate exposes:
//!
//! * [`laurent::LaurentPoly`]: the coefficient ring Z[v, v^-1].
//! * [`partition::Partition`]: integer partitions, dominance order, node
//!   residues and ladders.
//! * [`abacus::Abacus`]: bead configurations, cores, weights, and the runner
//!   insertion map [`abacus::plus`].
//! * [`fock`]: the Fock space operators (divided powers of the Chevalley
//!   generators, the ribbon-strip Heisenberg operators, and the composite
//!   runner-insertion operator).
//! * [`canonical`]: canonical basis vectors for regular and arbitrary column
//!   labels, block decomposition matrices, and the runner-insertion
//!   comparison report.
//! * [`cache`]: an on-disk store for computed block matrices.

pub mod abacus;
pub mod cache;
pub mod canonical;
pub mod fock;
pub mod laurent;
pub mod partition;

/// Errors surfaced by the computational layer.
///
/// Variants that indicate a broken internal invariant (for example a bar
/// matrix that fails to be unitriangular) are bugs if they ever fire on
/// well-formed input; they are distinct variants so callers can tell them
/// apart from plain bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("abacus needs at least {needed} beads, got {got}")]
    TooFewBeads { needed: usize, got: usize },

    #[error("abacus has no beads, runner residues undefined")]
    NoBeads,

    #[error("partition {partition} is not {e}-regular")]
    NotRegular { partition: String, e: u32 },

    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,

    #[error("node is not addable to the partition")]
    NotAddable,

    #[error("spanning set is singular, cannot invert bar matrix")]
    SingularSpanningSet,

    #[error("bar matrix entry for a computed basis vector is not bar-symmetric")]
    NonIntegralBar,

    #[error("straightening produced a coefficient outside vZ[v]: {0}")]
    StraighteningFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
