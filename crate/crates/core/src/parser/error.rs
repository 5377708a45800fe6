use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("lexical error: {0}")]
    Lex(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unresolved name `{0}`")]
    UnresolvedName(String),
    #[error("duplicate definition of `{0}`")]
    DuplicateDefinition(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("process variable `{0}` is bound by more than one variable pair")]
    Freshness(String),
    #[error("synchronisation or hiding set contains the terminal event `{0}`")]
    SyncSetContainsTerminal(String),
    #[error("indexed parallel: {0}")]
    IndexedBound(String),
}

/// A parse failure, located at the 1-based line and column where it was
/// detected (0:0 for whole-model checks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, line: usize, col: usize) -> Self {
        ParseError { kind, line, col }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.kind)
    }
}

impl std::error::Error for ParseError {}
