use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("atom `{0}` occurs in an operand but is missing from the alphabet")]
    AtomNotInAlphabet(String),

    #[error("alphabet has {atoms} atoms, more than the enumeration cap of {max}")]
    Capacity { atoms: usize, max: usize },

    #[error("profile product has {tuples} tuples, more than the cap of {max}")]
    TupleCapacity { tuples: u128, max: u64 },

    #[error("SE set is not well-defined: contains {0} without its total pair")]
    NotWellDefined(String),

    #[error("SE set is not complete: contains {here_there} and ({total},{total}) but not ({here},{total})")]
    NotComplete {
        here_there: String,
        here: String,
        total: String,
    },

    #[error("SE sets are over different alphabets")]
    AlphabetMismatch,

    #[error("invalid profile: {0}")]
    Profile(String),

    #[error("corrupt solver answer set: {0}")]
    CorruptAnswerSet(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
