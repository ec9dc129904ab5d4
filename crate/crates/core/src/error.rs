use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partite spec: {0}")]
    InvalidSpec(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("{what} = {value} is out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("radix base mismatch: {0:?} vs {1:?}")]
    BaseMismatch(Vec<usize>, Vec<usize>),

    #[error("construction defect: claimed s = {claimed} but the ordering only reaches {measured} (r = {r}, cyclic = {cyclic})")]
    ConstructionDefect {
        claimed: usize,
        measured: usize,
        r: usize,
        cyclic: bool,
    },
}
