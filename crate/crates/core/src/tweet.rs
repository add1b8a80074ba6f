//! Record types that flow between pipeline stages.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::annotate::{HateLabel, SentimentLabel};
use crate::entity::EntityMention;

/// Geographic coordinates in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coordinates {
    pub latitude: f64,
    pub longitude: f64,
}

/// Geo metadata of a raw tweet: exact coordinates, a place name, or both
/// (coordinates take precedence when both are present).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geo {
    pub coordinates: Option<Coordinates>,
    pub place: Option<String>,
}

/// A raw geotagged post as read from a dump file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    pub created_at: DateTime<Utc>,
    pub geo: Geo,
    /// Destination-country code, filled by geography resolution.
    pub country_code: Option<String>,
}

/// A tweet after preprocessing and country resolution; the unit the
/// embedding and topic-model stages consume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusTweet {
    pub id: String,
    pub country: String,
    pub year: i32,
    pub created_at: DateTime<Utc>,
    pub coordinates: Option<Coordinates>,
    pub place_name: Option<String>,
    pub tokens: Vec<String>,
    pub hashtag_tokens: Vec<String>,
}

/// A corpus tweet that passed relevance filtering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilteredTweet {
    #[serde(flatten)]
    pub tweet: CorpusTweet,
    /// Argmax topic over all topics.
    pub topic: u32,
    /// Maximum topic probability over the curated relevant topics.
    pub relevance: f64,
}

/// A filtered tweet with sentiment and hate labels attached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledTweet {
    #[serde(flatten)]
    pub tweet: FilteredTweet,
    pub sentiment: SentimentLabel,
    pub hate: HateLabel,
    /// True when the classifier saw no in-vocabulary tokens.
    pub low_confidence: bool,
    /// True when the labels came from an external annotation file.
    pub external: bool,
}

/// The fully annotated record the knowledge-base builder consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedTweet {
    pub id: String,
    pub country: String,
    pub year: i32,
    pub created_at: DateTime<Utc>,
    pub coordinates: Option<Coordinates>,
    pub place_name: Option<String>,
    pub topic: u32,
    pub relevance: f64,
    pub sentiment: SentimentLabel,
    pub hate: HateLabel,
    pub hashtags: Vec<String>,
    pub entities: Vec<EntityMention>,
}

impl AnnotatedTweet {
    pub fn from_labeled(labeled: &LabeledTweet, entities: Vec<EntityMention>) -> Self {
        let t = &labeled.tweet.tweet;
        AnnotatedTweet {
            id: t.id.clone(),
            country: t.country.clone(),
            year: t.year,
            created_at: t.created_at,
            coordinates: t.coordinates,
            place_name: t.place_name.clone(),
            topic: labeled.tweet.topic,
            relevance: labeled.tweet.relevance,
            sentiment: labeled.sentiment,
            hate: labeled.hate,
            hashtags: t.hashtag_tokens.clone(),
            entities,
        }
    }
}
