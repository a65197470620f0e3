//! Exact scalars, multivariate polynomials and dense matrices.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{mat_nullspace, RatMatrix};
pub use poly::{poly_combine, poly_partial, poly_subst_linear, var_names, Exponents, MultiPoly, PolyOp};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}
