//! Euclidean Jordan algebras: spin factors and real symmetric matrices.

mod algebra;
pub mod frame;
mod peirce;

pub use algebra::{
    jdet_inv, jmul, lmap, matrix_to_symm, pmap, symm_index, symm_pos, symm_to_matrix, AlgebraDescriptor,
    Frame, JordanElement,
};
pub use peirce::{
    cone_test, diagonal_csoi, idempotent_rank, is_idempotent, peirce_split, rank2_csoi, validate_csoi,
    ConeStatus, Csoi, PeirceSplit,
};

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JordanError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("{}", match .0 { Some(i) => format!("candidate {i} is not an idempotent"), None => "not an idempotent".to_string() })]
    NotIdempotent(Option<usize>),
    #[error("idempotents {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("idempotents do not sum to the unit")]
    SumNotUnit,
    #[error("coordinates must be real")]
    NotReal,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("frame change leaves an odd power of sqrt(2)")]
    IrrationalFrame,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
