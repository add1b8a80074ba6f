use std::collections::{BTreeSet, HashMap, HashSet};

use super::IngestError;
use crate::tweet::CorpusTweet;

/// Terms whose document frequency stays at or below `max_df` (as a
/// fraction of the corpus). "Above 70%" reads as strict: a term in
/// exactly 70% of documents is kept. Used only to build the topic-model
/// vocabulary; annotation keeps the unpruned text.
pub fn prune_by_document_frequency(
    corpus: &[CorpusTweet],
    max_df: f64,
) -> Result<BTreeSet<String>, IngestError> {
    if !(max_df > 0.0 && max_df <= 1.0) {
        return Err(IngestError::InvalidMaxDf(max_df));
    }
    if corpus.is_empty() {
        return Ok(BTreeSet::new());
    }
    let mut doc_freq: HashMap<&str, usize> = HashMap::new();
    for tweet in corpus {
        let distinct: HashSet<&str> = tweet.tokens.iter().map(String::as_str).collect();
        for term in distinct {
            *doc_freq.entry(term).or_insert(0) += 1;
        }
    }
    let n = corpus.len() as f64;
    Ok(doc_freq
        .into_iter()
        .filter(|(_, df)| (*df as f64) / n <= max_df)
        .map(|(term, _)| term.to_string())
        .collect())
}
