//! Alias-table entity linking: greedy left-to-right longest match over
//! preprocessed tokens, each match resolved to its highest-prior
//! candidate.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EntityError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("alias table row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("alias table surface `{surface}`: candidate priors sum to {sum}, must be ≤ 1")]
    PriorOverflow { surface: String, sum: f64 },
}

/// One linked candidate for a surface form.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub uri: String,
    pub label: String,
    pub prior: f64,
}

/// Surface form (lowercase token sequence) → candidates ranked by prior,
/// ties broken lexicographically by URI.
#[derive(Debug, Default)]
pub struct AliasTable {
    entries: HashMap<Vec<String>, Vec<Candidate>>,
    max_surface_len: usize,
}

/// A resolved mention: token span plus the chosen URI and label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityMention {
    pub start: usize,
    pub end: usize,
    pub uri: String,
    pub label: String,
}

impl AliasTable {
    /// Load a TSV of `surface<TAB>uri<TAB>label<TAB>prior`.
    pub fn load(path: &Path) -> Result<Self, EntityError> {
        let content = fs::read_to_string(path).map_err(|source| EntityError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_tsv(&content)
    }

    pub fn from_tsv(content: &str) -> Result<Self, EntityError> {
        let mut table = AliasTable::default();
        for (idx, line) in content.lines().enumerate() {
            let row = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(EntityError::MalformedRow {
                    row,
                    message: format!("expected 4 tab-separated fields, got {}", fields.len()),
                });
            }
            let surface: Vec<String> = fields[0]
                .to_lowercase()
                .split_whitespace()
                .map(str::to_string)
                .collect();
            if surface.is_empty() {
                return Err(EntityError::MalformedRow {
                    row,
                    message: "empty surface form".to_string(),
                });
            }
            mgkb_rdf::Iri::new(fields[1]).map_err(|e| EntityError::MalformedRow {
                row,
                message: e.to_string(),
            })?;
            let prior: f64 = fields[3].parse().map_err(|_| EntityError::MalformedRow {
                row,
                message: format!("invalid prior `{}`", fields[3]),
            })?;
            if !(0.0..=1.0).contains(&prior) {
                return Err(EntityError::MalformedRow {
                    row,
                    message: format!("prior {prior} outside [0, 1]"),
                });
            }
            table.max_surface_len = table.max_surface_len.max(surface.len());
            table.entries.entry(surface).or_default().push(Candidate {
                uri: fields[1].to_string(),
                label: fields[2].to_string(),
                prior,
            });
        }
        for (surface, candidates) in &mut table.entries {
            let sum: f64 = candidates.iter().map(|c| c.prior).sum();
            if sum > 1.0 + 1e-9 {
                return Err(EntityError::PriorOverflow {
                    surface: surface.join(" "),
                    sum,
                });
            }
            candidates.sort_by(|a, b| {
                b.prior
                    .partial_cmp(&a.prior)
                    .unwrap()
                    .then_with(|| a.uri.cmp(&b.uri))
            });
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Greedy left-to-right longest-match linking. Matched spans are
/// consumed, so mentions never overlap and come out ordered by start.
pub fn link(tokens: &[String], table: &AliasTable) -> Vec<EntityMention> {
    let mut mentions = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let longest = table.max_surface_len.min(tokens.len() - i);
        let mut matched = None;
        for len in (1..=longest).rev() {
            if let Some(candidates) = table.entries.get(&tokens[i..i + len]) {
                let best = &candidates[0];
                matched = Some(EntityMention {
                    start: i,
                    end: i + len,
                    uri: best.uri.clone(),
                    label: best.label.clone(),
                });
                break;
            }
        }
        match matched {
            Some(m) => {
                i = m.end;
                mentions.push(m);
            }
            None => i += 1,
        }
    }
    mentions
}

/// Distinct-tweet counts per linked entity label, count descending with
/// lexicographic ties.
pub fn entity_frequency(mentions: &[(String, EntityMention)]) -> Vec<(String, usize)> {
    let mut per_label: BTreeMap<&str, HashSet<&str>> = BTreeMap::new();
    for (tweet_id, mention) in mentions {
        per_label
            .entry(mention.label.as_str())
            .or_default()
            .insert(tweet_id.as_str());
    }
    let mut ranking: Vec<(String, usize)> = per_label
        .into_iter()
        .map(|(label, tweets)| (label.to_string(), tweets.len()))
        .collect();
    ranking.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranking
}
