use thiserror::Error;

/// Errors raised by parsing, validation and operations whose preconditions fail.
///
/// Partiality of the state action is *not* an error; operations that may be
/// undefined return `Option` instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("line {line}: undeclared state `{name}`")]
    UndeclaredState { line: usize, name: String },
    #[error("line {line}: undeclared symbol `{name}`")]
    UndeclaredSymbol { line: usize, name: String },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("automaton is not invertible")]
    NotInvertible,
    #[error("automaton is not a G-automaton (deterministic, invertible and complete)")]
    NotGroup,
    #[error("precondition: complete reversible deterministic automaton required")]
    NotCompleteReversible,
    #[error("element cap exceeded: more than {0} distinct elements")]
    CapExceeded(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
}

impl Error {
    /// True for errors caused by the automaton not satisfying an operation's
    /// structural precondition (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotDeterministic
                | Error::NotInvertible
                | Error::NotGroup
                | Error::NotCompleteReversible
                | Error::CapExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
