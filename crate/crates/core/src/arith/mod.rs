//! Exact arithmetic: rationals, monomials, sparse and Laurent polynomials.

mod laurent;
mod monomial;
mod parse;
mod poly;
mod rational;
mod vars;

pub use laurent::LaurentPolynomial;
pub use monomial::Monomial;
pub use parse::{parse_laurent, parse_polynomial};
pub use poly::{poly_det, poly_det_with_bound, PolyJson, SparsePolynomial, TermJson, DEFAULT_DET_BOUND};
pub use rational::ExactRational;
pub use vars::VariableTable;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different variable tables")]
    VariableMismatch,
    #[error("division is not exact")]
    Inexact,
    #[error("frozen variable `{0}` would appear in a denominator")]
    FrozenDenominator(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix size {size} exceeds determinant bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected a polynomial, found a nontrivial denominator")]
    NotPolynomial,
}
