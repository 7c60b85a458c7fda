//! Exact scalar arithmetic over ℚ.
//!
//! [`LaurentExpr`] is the universal scalar of the crate: a quotient of two
//! multivariate Laurent polynomials in named [`Generator`]s. Denominators are
//! never reduced by a gcd; equality is decided by cross-multiplication.

mod expr;
mod generator;
mod linalg;
mod matrix;
mod monomial;
mod parse;
mod poly;
pub mod sampling;

use thiserror::Error;

pub use expr::{bindings, expr_equal, rat, LaurentExpr};
pub use generator::{Generator, MAX_GENERATORS};
pub use linalg::{nullspace, nullspace_rational, rank_rational};
pub use matrix::ExprMatrix;
pub use monomial::Monomial;
pub use num_rational::BigRational;
pub use poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("generator `{0}` has no binding")]
    UnboundGenerator(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("generator registry is full; cannot register `{0}`")]
    RegistryFull(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidGeneratorName(String),
    #[error("expression is not a rational constant: {0}")]
    NotConstant(String),
    #[error("expression is not a polynomial in `{0}`")]
    NotPolynomialIn(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
