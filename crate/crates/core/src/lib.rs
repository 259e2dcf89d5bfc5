//! Exact computer algebra for cluster algebra seed patterns of geometric type.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: rationals, sparse and Laurent polynomials, determinants, parsing.
//! * [`quiver`]: extended exchange matrices, matrix mutation, acyclicity and
//!   mutation-class search.
//! * [`seed`]: seeds over any [`seed::ClusterValue`], seed mutation and
//!   breadth-first enumeration of seed patterns.
//! * [`models`]: concrete realizations in generic-matrix entries (Plücker and
//!   flag minors, the quadric, rectangles and wiring seeds, identity suites).
//! * [`ideals`]: Buchberger bases, membership, saturation and exchange ideals.
//! * [`presets`]: the named seed registry shared by the CLI and HTTP API.

pub mod arith;
pub mod ideals;
pub mod models;
pub mod presets;
pub mod quiver;
pub mod seed;

pub use arith::{
    ArithError, ExactRational, LaurentPolynomial, Monomial, SparsePolynomial, VariableTable,
};
pub use quiver::{ExtendedExchangeMatrix, QuiverError};
pub use seed::{ClusterValue, PatternSummary, Seed, SeedError};
