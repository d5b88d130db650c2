//! Hypersets as accessible pointed graphs.
//!
//! A value is an [`HGraph`]: a root inside a shared, immutable [`Arena`].
//! Equality is bisimilarity, never node identity, except inside an arena
//! produced by [`minimize_all`], where the two coincide.

mod bisim;
mod decorate;
mod graph;
mod io;

use thiserror::Error;

pub use bisim::{
    bisimilar_naive, coarsest_partition, minimize_all, naive_bisimulation, quotient, Relation,
};
pub(crate) use bisim::decode_pair_in;
pub use decorate::NestedSetTerm;
pub use graph::{Arena, ArenaBuilder, AtomLabel, HGraph, Namespace, Node, NodeId, DOLLAR};
pub use io::{GraphDoc, NodeDoc, NodeKindDoc};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HypersetError {
    #[error("atom label must not be empty")]
    EmptyLabel,
    #[error("marker namespace only holds \"$\", not {0:?}")]
    UnknownMarker(String),
    #[error("atom {0} has no members")]
    AtomHasNoMembers(AtomLabel),
    #[error("graph is cyclic and has no well-founded decoration")]
    CyclicGraph,
    #[error("graph document, {location}: {message}")]
    Parse { location: String, message: String },
}
