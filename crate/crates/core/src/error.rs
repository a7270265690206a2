use thiserror::Error;

use crate::field::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown basis id `{0}`")]
    UnknownBasisId(String),
    #[error("duplicate basis id `{0}`")]
    DuplicateBasisId(String),
    #[error("basis element `{id}` uses object {object}, but only {num_objects} objects exist")]
    ObjectOutOfRange {
        id: String,
        object: usize,
        num_objects: usize,
    },
    #[error("arity mismatch: expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree mismatch in {map} entry ({inputs}) -> `{output}`: expected degree {expected}, found {found}")]
    DegreeMismatch {
        map: String,
        inputs: String,
        output: String,
        expected: i64,
        found: i64,
    },
    #[error("entry of {map} on ({inputs}) is not composable over the base ring")]
    NotComposable { map: String, inputs: String },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a supported prime modulus")]
    InvalidPrime(u64),
    #[error("cannot parse `{0}` as an exact scalar")]
    ParseScalar(String),
    #[error("no strict units declared")]
    UnitsMissing,
    #[error("invalid units: {0}")]
    InvalidUnits(String),
    #[error("subspace is not closed: {0}")]
    ClosureViolation(String),
    #[error("A-infinity relations fail: {0}")]
    RelationsFail(String),
    #[error("not a sub-bimodule: {0}")]
    NotSubBimodule(String),
    #[error("bimodules live over different base algebras")]
    BaseMismatch,
    #[error("morphism does not restrict to the identity on the subalgebra: {0}")]
    NotIdentityOnSub(String),
    #[error("not a dga: {0}")]
    NotDga(String),
    #[error("simplicial complex is empty")]
    EmptyComplex,
    #[error("subcomplex is not contained in the complex: {0}")]
    NotSubcomplex(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid twisted complex: {0}")]
    InvalidTwisted(String),
    #[error("{0}")]
    Input(String),
}
