use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),
    #[error("vertex at level {level} is deeper than the portrait depth {depth}")]
    TooDeep { level: usize, depth: usize },
    #[error("vertices at different levels ({0} and {1})")]
    LevelMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("quotient too large: {what} exceeds the enumeration cap of {cap}")]
    TooLarge { what: String, cap: usize },
    #[error("no exact sampler available for {0}")]
    NoSampler(String),
    #[error("{0} is not an element of the group quotient")]
    NotAMember(String),
    #[error("vertices {0} and {1} are {2}-cousins")]
    CousinPrecondition(String, String, usize),
    #[error("expected count per cell is {expected:.3}, below the minimum of {min}")]
    CellCountGuard { expected: f64, min: f64 },
    #[error("rank mismatch: word over {word} generators, tuple of {tuple}")]
    RankMismatch { word: usize, tuple: usize },
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
