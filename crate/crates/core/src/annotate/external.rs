use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::path::Path;

use serde::Deserialize;

use super::{AnnotateError, HateLabel, Label, SentimentLabel};

/// Labels produced outside the pipeline, keyed by tweet id. External
/// labels override baseline labels on matching tweets.
#[derive(Debug, Default)]
pub struct ExternalAnnotations {
    pub labels: HashMap<String, (SentimentLabel, HateLabel)>,
    /// Ids from the file that matched no corpus tweet.
    pub unmatched: Vec<String>,
}

#[derive(Deserialize)]
struct Row {
    id: String,
    sentiment: String,
    hate: String,
}

/// Read a `id,sentiment,hate` CSV. Unknown label strings are fatal with
/// the row number; ids missing from the corpus are reported and skipped.
pub fn ingest_external_annotations(
    path: &Path,
    corpus_ids: &HashSet<String>,
) -> Result<ExternalAnnotations, AnnotateError> {
    let file = File::open(path).map_err(|source| AnnotateError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(file);
    let mut out = ExternalAnnotations::default();
    for (idx, row) in reader.deserialize::<Row>().enumerate() {
        let row_no = idx + 2;
        let row = row.map_err(|e| AnnotateError::MalformedRow {
            row: row_no,
            message: e.to_string(),
        })?;
        let sentiment =
            SentimentLabel::from_name(&row.sentiment).ok_or(AnnotateError::UnknownLabel {
                row: row_no,
                label: row.sentiment.clone(),
            })?;
        let hate = HateLabel::from_name(&row.hate).ok_or(AnnotateError::UnknownLabel {
            row: row_no,
            label: row.hate.clone(),
        })?;
        if corpus_ids.contains(&row.id) {
            out.labels.insert(row.id, (sentiment, hate));
        } else {
            log::warn!("external annotation for unknown tweet id `{}`", row.id);
            out.unmatched.push(row.id);
        }
    }
    Ok(out)
}
