use std::collections::BTreeMap;

use serde::Serialize;

use super::Label;
use crate::tweet::AnnotatedTweet;

/// Per (country, year) label counts and percentages. Percentages sum to
/// 100 per dimension; cells exist only where tweets exist.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttitudeCell {
    pub total: usize,
    /// negative, neutral, positive
    pub sentiment_counts: [usize; 3],
    /// hate, offensive, normal
    pub hate_counts: [usize; 3],
    pub sentiment_percentages: [f64; 3],
    pub hate_percentages: [f64; 3],
}

pub type AttitudeStats = BTreeMap<(String, i32), AttitudeCell>;

pub fn aggregate_attitudes(tweets: &[AnnotatedTweet]) -> AttitudeStats {
    let mut stats: AttitudeStats = BTreeMap::new();
    for tweet in tweets {
        let cell = stats
            .entry((tweet.country.clone(), tweet.year))
            .or_insert(AttitudeCell {
                total: 0,
                sentiment_counts: [0; 3],
                hate_counts: [0; 3],
                sentiment_percentages: [0.0; 3],
                hate_percentages: [0.0; 3],
            });
        cell.total += 1;
        cell.sentiment_counts[tweet.sentiment.index()] += 1;
        cell.hate_counts[tweet.hate.index()] += 1;
    }
    for cell in stats.values_mut() {
        let t = cell.total as f64;
        for i in 0..3 {
            cell.sentiment_percentages[i] = 100.0 * cell.sentiment_counts[i] as f64 / t;
            cell.hate_percentages[i] = 100.0 * cell.hate_counts[i] as f64 / t;
        }
    }
    stats
}
