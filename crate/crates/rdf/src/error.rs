use thiserror::Error;

#[derive(Debug, Error)]
pub enum RdfError {
    #[error("invalid IRI `{0}`: {1}")]
    InvalidIri(String, &'static str),

    #[error("invalid blank node label `{0}`")]
    InvalidBlankLabel(String),

    #[error("invalid language tag `{0}`")]
    InvalidLanguageTag(String),

    #[error("literal cannot be the subject of a triple")]
    LiteralSubject,

    #[error("unknown namespace prefix `{0}`")]
    UnknownPrefix(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl RdfError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        RdfError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
