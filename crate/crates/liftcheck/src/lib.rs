//! Exact computational machinery around central extensions of finite groups,
//! permutation modules over prime fields, and the question of when a central
//! extension embeds into the semidirect product of the base group with a
//! permutation module.
//!
//! The crate is organized bottom-up:
//!
//! * [`words`] — free-group words, exponent sums, Fox derivatives.
//! * [`linalg`] — dense exact linear algebra over `F_p`.
//! * [`groups`] — finite groups (permutation or table realization) and the
//!   structural subroutines: stabilizers, center, Sylow subgroups, quotients,
//!   subgroup enumeration, coset actions.
//! * [`permmod`] — the permutation module `V = F_p^Ω`, the semidirect product
//!   `G ⋉ V`, and two routes for evaluating words in it.
//! * [`presentations`] — finitely presented groups, presentations of group
//!   extensions, p-group presentations with relator exponent sums divisible
//!   by p, and Todd–Coxeter coset enumeration.
//! * [`extensions`] — central extensions of `G` by `F_p` via normalized
//!   2-cocycles, the cocycle/coboundary spaces, and liftability of subgroups
//!   decided by three independent methods.
//! * [`subext`] — the subextension solver, the necessary condition on point
//!   stabilizers, relator obstruction evaluation, and the sweep harness.
//! * [`catalog`] — named constructors: `PSL₂(q)` on the projective line with
//!   its `SL₂(q)` double cover, and the small groups feeding the sweeps.

pub mod catalog;
pub mod extensions;
pub mod groups;
pub mod linalg;
pub mod permmod;
pub mod presentations;
pub mod subext;
pub mod words;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of alphabet bounds (alphabet size {alphabet})")]
    GeneratorOutOfBounds { index: usize, alphabet: usize },
    #[error("no image assigned for generator x{0}")]
    MissingImage(usize),
    #[error("word parse error at position {position}: {message}")]
    WordParse { position: usize, message: String },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order exceeds the configured limit {limit}")]
    OrderLimitExceeded { limit: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("group is not a {p}-group (order {order})")]
    NotPGroup { p: u64, order: usize },
    #[error("subgroup is not central in its parent")]
    NotCentral,
    #[error("subgroup is not elementary abelian")]
    NotElementaryAbelian,
    #[error("coset table limit {limit} exceeded")]
    CosetTableOverflow { limit: usize },
    #[error("cocycle is not normalized: c(1,g) or c(g,1) nonzero")]
    CocycleNotNormalized,
    #[error("cocycle identity violated at ({0}, {1}, {2})")]
    CocycleIdentity(usize, usize, usize),
    #[error("given map is not a presentation of the expected group: {0}")]
    BadPresentation(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("unknown catalog entry {name:?} with params {params:?}")]
    UnknownCatalog { name: String, params: String },
    #[error("invalid catalog parameter: {0}")]
    CatalogParam(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
