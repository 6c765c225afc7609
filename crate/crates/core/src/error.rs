use thiserror::Error;

use crate::vector_fields::VectorField;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("a different square root is already adjoined")]
    ExtensionAlreadyActive,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("vector fields live on different surfaces")]
    SurfaceMismatch,
    #[error("map is not birational: {0}")]
    NotBirational(String),
    #[error("candidate first integral is constant")]
    ConstantIntegral,
    #[error("vector field is not vertical")]
    NotVertical,
    #[error("vector field is not birationally integrable: {0}")]
    NotIntegrable(String),
    #[error("first integral is not Moebius in either variable")]
    CannotAdapt,
    #[error("function is not a first integral of the field")]
    NotAFirstIntegral,
    #[error("vector field does not extend to the projective plane")]
    NotInAutP2,
    #[error("characteristic polynomial does not split")]
    CharPolyDoesNotSplit,
    #[error("vector field is not in the Borel subalgebra B_{0}")]
    NotInBorel(u32),
    #[error("normal form {0} needs no further reduction")]
    NothingToReduce(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("transformation is degenerate at this parameter")]
    Degenerate,
    #[error("basis is not closed under the bracket; witness {0}")]
    NotClosed(Box<VectorField>),
    #[error("basis elements are linearly dependent")]
    NotIndependent,
    #[error("the two fields do not span a Lie algebra")]
    NotAnAlgebra,
    #[error("pair falls outside the supported normalization moves: {0}")]
    Unclassified(String),
    #[error("pair does not span a non-abelian two-dimensional algebra")]
    NotAffinePair,
    #[error("unknown catalog entry {0}")]
    UnknownName(String),
    #[error("the zero vector field has no normal form")]
    ZeroField,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
