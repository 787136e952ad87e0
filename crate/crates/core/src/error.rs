use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, token {index}: malformed token `{token}` (expected surface/TAG)")]
    MalformedToken { line: usize, index: usize, token: String },

    #[error("{what}, line {line}: {msg}")]
    Parse {
        what: &'static str,
        line: usize,
        msg: String,
    },

    #[error("invalid tag configuration: {0}")]
    Config(String),

    #[error("unsupported model format `{found}` (this build reads format {expected})")]
    FormatVersion { found: String, expected: u32 },

    #[error("model checksum mismatch (header says {expected}, body hashes to {found}); file truncated or edited?")]
    Checksum { expected: String, found: String },

    #[error("incompatible count stores: {0}")]
    IncompatibleStores(String),

    #[error("model not trained: {0}")]
    NotTrained(String),

    #[error("instance {index} has no gold label")]
    MissingGold { index: usize },

    #[error("prediction lists differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid synthetic corpus spec: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(what: &'static str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            line,
            msg: msg.into(),
        }
    }
}
