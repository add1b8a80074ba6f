//! Dump loading, geography resolution, text preprocessing, and
//! document-frequency pruning.

mod dump;
mod gazetteer;
mod preprocess;
mod prune;

pub use dump::{load_dump, DumpFormat, DumpLoad, DumpWarning};
pub use gazetteer::{resolve_country, BoundingBox, Gazetteer, DESTINATION_COUNTRIES};
pub use preprocess::{preprocess, PreprocessedText, Stopwords};
pub use prune::prune_by_document_frequency;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("unknown dump format `{0}`")]
    UnknownFormat(String),

    #[error("gazetteer row {row}: {message}")]
    Gazetteer { row: usize, message: String },

    #[error("gazetteer country `{0}` is not one of the destination countries")]
    UnknownCountry(String),

    #[error("invalid document-frequency bound {0}; must be in (0, 1]")]
    InvalidMaxDf(f64),
}
