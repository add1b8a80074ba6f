use serde::{Deserialize, Serialize};

/// Common surface for the two label enums. `ALL` fixes the deterministic
/// tie-break order for argmax decisions; `FALLBACK` is the label used
/// when a document has no in-vocabulary tokens.
pub trait Label: Copy + Eq + std::hash::Hash + std::fmt::Debug + 'static {
    const ALL: &'static [Self];
    const FALLBACK: Self;

    fn as_str(&self) -> &'static str;

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|l| l.as_str() == name)
    }

    fn index(&self) -> usize {
        Self::ALL.iter().position(|l| l == self).unwrap()
    }
}

/// Three-class sentiment, tie order negative < neutral < positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Negative,
    Neutral,
    Positive,
}

impl Label for SentimentLabel {
    const ALL: &'static [Self] = &[Self::Negative, Self::Neutral, Self::Positive];
    const FALLBACK: Self = Self::Neutral;

    fn as_str(&self) -> &'static str {
        match self {
            Self::Negative => "negative",
            Self::Neutral => "neutral",
            Self::Positive => "positive",
        }
    }
}

/// Three-class hate speech, tie order hate < offensive < normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HateLabel {
    Hate,
    Offensive,
    Normal,
}

impl Label for HateLabel {
    const ALL: &'static [Self] = &[Self::Hate, Self::Offensive, Self::Normal];
    const FALLBACK: Self = Self::Normal;

    fn as_str(&self) -> &'static str {
        match self {
            Self::Hate => "hate",
            Self::Offensive => "offensive",
            Self::Normal => "normal",
        }
    }
}
