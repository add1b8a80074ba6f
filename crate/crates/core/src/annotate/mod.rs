//! Sentiment and hate annotation: label types, the stratified split,
//! a trainable embedding-average baseline, macro-metric evaluation, and
//! ingestion of externally produced labels.

mod aggregate;
mod baseline;
mod eval;
mod external;
mod labels;
mod split;

pub use aggregate::{aggregate_attitudes, AttitudeCell, AttitudeStats};
pub use baseline::{train_baseline, BaselineClassifier, BaselineConfig, Classification};
pub use eval::{evaluate, EvalReport};
pub use external::{ingest_external_annotations, ExternalAnnotations};
pub use labels::{HateLabel, Label, SentimentLabel};
pub use split::{stratified_split, Split};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnnotateError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("class `{0}` has fewer than 3 examples; stratified split needs at least 3")]
    ClassTooSmall(String),

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("prediction and gold label sequences differ in length ({predictions} vs {gold})")]
    LengthMismatch { predictions: usize, gold: usize },

    #[error("annotation file row {row}: unknown label `{label}`")]
    UnknownLabel { row: usize, label: String },

    #[error("annotation file row {row}: {message}")]
    MalformedRow { row: usize, message: String },
}
