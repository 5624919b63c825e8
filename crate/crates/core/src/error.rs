use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A malformed line in one of the plain-text resource files.
    #[error("{file}:{line}: {message}")]
    Syntax {
        file: &'static str,
        line: usize,
        message: String,
    },

    #[error("{file}: {message}")]
    Invalid { file: &'static str, message: String },

    #[error("unknown fine-grained tag `{0}`")]
    UnknownFineTag(String),

    #[error("fine tag mapping is for mode {have}, mode {want} was requested")]
    ModeMismatch { have: u8, want: u8 },

    #[error("sentence text is empty")]
    EmptyText,

    #[error("truncated candidate has {0} symbols, at least 3 are needed to encode")]
    TooShortToEncode(usize),

    #[error("candidate has no CLOSE boundary symbol")]
    MissingClose,

    #[error("net was trained against tagset {found}, active tagset is {expected}")]
    TagsetMismatch { expected: String, found: String },

    #[error("net file is for the {found} stage, {expected} was requested")]
    StageMismatch { expected: String, found: String },

    #[error("cannot select from an empty candidate list")]
    NoCandidates,

    #[error("cannot train on an empty item list")]
    NoTrainingItems,

    #[error("only a trained net can be saved")]
    Untrained,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(file: &'static str, line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            file,
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(file: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            file,
            message: message.into(),
        }
    }
}
