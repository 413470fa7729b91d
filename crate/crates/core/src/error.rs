use thiserror::Error;

use crate::geometry::GenericityViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cycle class: {0}")]
    InvalidClass(String),
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("cycles are not vertex-disjoint")]
    NotDisjoint,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("embedding file: {0}")]
    Format(String),
    #[error("no generic projection direction among {tried} candidates (last failure: {last})")]
    NoGenericDirection {
        tried: usize,
        last: GenericityViolation,
    },
    #[error("projection direction is not generic: {0}")]
    NotGeneric(GenericityViolation),
    #[error("expected a {expected}-component diagram, got {actual} components")]
    WrongArity { expected: usize, actual: usize },
    #[error("malformed Gauss diagram: {0}")]
    MalformedDiagram(String),
    #[error("inconsistent diagram: {0}")]
    Inconsistent(String),
    #[error("degenerate contact: {0}")]
    DegenerateContact(String),
    #[error("invalid generator parameters: {0}")]
    Parameter(String),
    #[error("random embedding generation failed after {0} attempts")]
    GenerationFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
