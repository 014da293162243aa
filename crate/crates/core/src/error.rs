use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a supported prime modulus (need a prime 2 <= p < 2^31)")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not nilpotent: rank stabilizes at {rank} from power {power} on")]
    NotNilpotent { power: usize, rank: usize },

    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    #[error("dimension {dim} exceeds the configured bound {max}")]
    SizeBound { dim: usize, max: usize },

    /// `row` and `col` are 0-based; the message counts from 1.
    #[error("entry ({},{}) violates membership in {set}", .row + 1, .col + 1)]
    Membership { set: &'static str, row: usize, col: usize },

    #[error("block profile mismatch: {0}")]
    ProfileMismatch(String),

    #[error("invalid block profile: {0}")]
    InvalidProfile(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("polynomial uses {needed} variables but only {given} arguments were supplied")]
    Arity { needed: usize, given: usize },

    #[error("polynomial is not multilinear")]
    NotMultilinear,

    #[error("exhaustive enumeration needs a finite field")]
    InfiniteField,

    #[error("ill-posed input: {0}")]
    IllPosed(String),

    #[error("unknown identity name '{0}' (expected comm, comm2, s<k>, or a '*'-separated product)")]
    UnknownIdentity(String),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("algebra basis is not closed under multiplication")]
    NotClosed,
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
