//! Finite group actions on finite directed multigraphs, sections of the
//! associated extension of the acting group by the fundamental group, and a
//! finite-descent / local-global checker for curves modeled by their
//! incidence graphs.
//!
//! The crate is organized around a small tower of modules:
//!
//! * [`graph`] — multigraphs, connectivity, spanning forests, covering maps,
//!   reduced homology ranks.
//! * [`paths`] — reduced edge words, the fundamental groupoid, free-group
//!   normal forms relative to a spanning forest.
//! * [`actions`] — finite groups as multiplication tables, orientation
//!   preserving actions, fixed subgraphs.
//! * [`covers`] — finite covering graphs built from permutation
//!   representations of the fundamental group, and homology transfer ranks
//!   along cover towers.
//! * [`sections`] — cocycle tables splitting the extension, the orbit-center
//!   fixed-point algorithm on the universal cover, and the constructive
//!   bijection between section classes and fixed components.
//! * [`descent`] — incidence graphs of curves with Galois data, local
//!   realizability, and rational-point witness extraction.
//!
//! Everything is exact integer computation; all operations are pure and
//! deterministic (ties break by ascending id).

pub mod actions;
pub mod covers;
pub mod descent;
pub mod graph;
pub mod paths;
pub mod sections;

pub use actions::{ActionViolation, FiniteGroup, FixedSubgraph, GraphAction, GroupViolation, Subgroup};
pub use covers::{CoverError, CoverResult, SubgroupRep, TransferRank};
pub use descent::{
    Branch, CurveDescription, DescentError, DescentVerdict, GaloisAction, LocalCheck,
    LocalRealizability, Place, PointWitness,
};
pub use graph::{Component, Edge, Graph, GraphMap, GraphMapViolation, GraphViolation};
pub use paths::{Dir, FreeWord, Letter, PathError, PathWord, Step};
pub use sections::{QElement, Section, SectionClass, SectionError, UniversalVertex};

/// Any error the library can produce, for callers that do not care which
/// module it came from.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphViolation),
    #[error(transparent)]
    GraphMap(#[from] GraphMapViolation),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Group(#[from] GroupViolation),
    #[error(transparent)]
    Action(#[from] ActionViolation),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Descent(#[from] DescentError),
}

impl Error {
    /// True for errors that signal a broken internal invariant (a bug or an
    /// inconsistent oracle) rather than invalid input.
    pub fn is_internal(&self) -> bool {
        match self {
            Error::Section(e) => e.is_internal(),
            Error::Descent(e) => e.is_internal(),
            _ => false,
        }
    }
}
