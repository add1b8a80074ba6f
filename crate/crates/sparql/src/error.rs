use thiserror::Error;

#[derive(Debug, Error)]
pub enum SparqlError {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported construct `{construct}` at {line}:{column}")]
    Unsupported {
        construct: String,
        line: usize,
        column: usize,
    },

    #[error("unknown namespace prefix `{0}`")]
    UnknownPrefix(String),

    #[error("invalid regex `{pattern}`: {message}")]
    InvalidRegex { pattern: String, message: String },

    #[error("ORDER BY key `?{0}` is not a projected column")]
    OrderKeyNotProjected(String),

    #[error("variable `?{0}` is projected but not bound by the graph pattern")]
    UnboundProjection(String),

    #[error(transparent)]
    Rdf(#[from] mgkb_rdf::RdfError),
}

impl SparqlError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        SparqlError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
