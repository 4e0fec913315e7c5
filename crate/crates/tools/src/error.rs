use std::fmt;
use std::path::PathBuf;

/// A syntax error at a byte offset into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into() }
    }

    pub(crate) fn shifted(self, by: usize) -> ParseError {
        ParseError { offset: self.offset + by, ..self }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("cannot parse {what} `{text}`: {error}")]
    Parse { what: String, text: String, error: ParseError },
    #[error("{path}:{line}: {message}")]
    Table { path: String, line: usize, message: String },
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] endw::Error),
    #[error("{0}")]
    Usage(String),
}
