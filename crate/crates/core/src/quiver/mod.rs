//! Extended exchange matrices and their combinatorics.

mod matrix;
mod search;

pub use matrix::{random_skew_symmetrizable, ExtendedExchangeMatrix, QuiverJson};
pub use search::{
    bbh_mutation_acyclic, bbh_determinant, canonical_form, is_acyclic, q_abc, search_acyclic_in_mutation_class,
    source_sink_sequence, SearchOutcome,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {k} out of range (1..={n})")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("vertex {k} is frozen")]
    FrozenVertex { k: usize },
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("principal part is not skew-symmetrizable by the given d")]
    NotSkewSymmetrizable,
    #[error("vertex {0} is neither a source nor a sink")]
    NotBipartite(usize),
    #[error("search budget must be positive")]
    InvalidBudget,
    #[error("mutation-class search needs a quiver without frozen rows and n <= {max}")]
    UnsupportedSearch { max: usize },
    #[error("matrix entry overflow during mutation")]
    Overflow,
}
