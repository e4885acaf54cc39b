use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("cycle enumeration exceeded the limit of {0} cycles")]
    CycleLimit(usize),
    #[error("missing witness: {0}")]
    MissingWitness(String),
    #[error("invalid motion: {0}")]
    InvalidMotion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
