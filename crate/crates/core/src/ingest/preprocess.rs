use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::Path;

use once_cell::sync::Lazy;
use regex::Regex;

use super::IngestError;

/// Lowercased stop-word set loaded from a data file (one term per line,
/// `#` comments).
#[derive(Debug, Clone, Default)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let content = fs::read_to_string(path).map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::from_lines(&content))
    }

    pub fn from_lines(content: &str) -> Self {
        let set = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Stopwords(set)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.0.contains(term)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Preprocessed text: the surviving tokens plus which of them came from
/// hashtags. `tokens` is empty when fewer than two tokens survive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PreprocessedText {
    pub tokens: Vec<String>,
    pub hashtag_tokens: BTreeSet<String>,
}

// Contractions expanded on the raw text; specific forms first, then the
// generic suffix rules.
static CONTRACTIONS: Lazy<Vec<(Regex, &'static str)>> = Lazy::new(|| {
    let table: &[(&str, &str)] = &[
        (r"can't", "cannot"),
        (r"won't", "will not"),
        (r"shan't", "shall not"),
        (r"ain't", "is not"),
        (r"let's", "let us"),
        (r"it's", "it is"),
        (r"that's", "that is"),
        (r"what's", "what is"),
        (r"who's", "who is"),
        (r"there's", "there is"),
        (r"here's", "here is"),
        (r"he's", "he is"),
        (r"she's", "she is"),
        (r"(\w+)n't", "$1 not"),
        (r"(\w+)'re", "$1 are"),
        (r"(\w+)'ve", "$1 have"),
        (r"(\w+)'ll", "$1 will"),
        (r"(\w+)'m", "$1 am"),
        (r"(\w+)'d", "$1 would"),
    ];
    table
        .iter()
        .map(|(pat, rep)| {
            (
                Regex::new(&format!(r"(?i)\b{pat}\b")).unwrap(),
                *rep,
            )
        })
        .collect()
});

static HTML_TAG: Lazy<Regex> = Lazy::new(|| Regex::new(r"<[^>]+>").unwrap());
static HTML_ENTITY: Lazy<Regex> = Lazy::new(|| Regex::new(r"&#?\w+;").unwrap());
static URL: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)^(https?://|www\.)").unwrap());

static EMOTICONS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    [
        ":)", ":(", ":D", ":P", ":p", ";)", ":-)", ":-(", ":-D", ":-P", ";-)", ":'(", ":o",
        ":O", ":/", ":-/", ":|", "xD", "XD", "xd", "<3", "=)", "=(",
    ]
    .into_iter()
    .collect()
});

static LEMMA_EXCEPTIONS: Lazy<HashMap<&'static str, &'static str>> = Lazy::new(|| {
    include_str!("../../data/lemma_exceptions.tsv")
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .collect()
});

/// Emoji detection by Unicode block ranges; the exact list is part of
/// the documented preprocessing recipe.
fn is_emoji(c: char) -> bool {
    matches!(u32::from(c),
        0x1F000..=0x1FAFF   // emoji, pictographs, flags, supplement
        | 0x2600..=0x27BF   // misc symbols and dingbats
        | 0x2B00..=0x2BFF   // misc symbols and arrows
        | 0xFE00..=0xFE0F   // variation selectors
        | 0x200D            // zero-width joiner
        | 0x20E3            // combining enclosing keycap
    )
}

fn is_strippable_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '«' | '»' | '“' | '”' | '‘' | '’' | '—' | '–' | '…' | '¡' | '¿' | '·' | '´' | '`'
        )
}

/// Numeric tokens carry at least one digit and no alphabetic character
/// ("100", "100%", "19:30").
fn is_numeric_token(token: &str) -> bool {
    token.chars().any(|c| c.is_ascii_digit()) && !token.chars().any(char::is_alphabetic)
}

/// Rule-based suffix stripping with an exceptions dictionary. Approximate
/// by design; deterministic and dependency-free.
pub(crate) fn lemmatize(word: &str) -> String {
    if let Some(lemma) = LEMMA_EXCEPTIONS.get(word) {
        return (*lemma).to_string();
    }
    let n = word.len();
    if n < 4 || !word.is_ascii() {
        return word.to_string();
    }

    if let Some(stem) = word.strip_suffix("ies") {
        if n > 4 {
            return format!("{stem}y");
        }
    }
    if word.ends_with("sses") {
        return word[..n - 2].to_string();
    }
    for suffix in ["shes", "ches", "xes", "zes"] {
        if word.ends_with(suffix) {
            return word[..n - 2].to_string();
        }
    }
    if word.ends_with('s')
        && !word.ends_with("ss")
        && !word.ends_with("us")
        && !word.ends_with("is")
    {
        return word[..n - 1].to_string();
    }
    if let Some(stem) = word.strip_suffix("ied") {
        if n > 4 {
            return format!("{stem}y");
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if n > 4 {
            return undouble(stem);
        }
    }
    if let Some(stem) = word.strip_suffix("ying") {
        if n > 5 {
            return format!("{stem}y");
        }
    }
    if let Some(stem) = word.strip_suffix("ing") {
        if n > 5 && stem.chars().any(|c| "aeiouy".contains(c)) {
            return undouble(stem);
        }
    }
    word.to_string()
}

/// stopped → stop, running → run
fn undouble(stem: &str) -> String {
    let bytes = stem.as_bytes();
    let n = bytes.len();
    if n >= 3 && bytes[n - 1] == bytes[n - 2] && !b"aeiou".contains(&bytes[n - 1]) {
        stem[..n - 1].to_string()
    } else {
        stem.to_string()
    }
}

/// Normalize tweet text into topic-model-ready tokens.
///
/// Applies, in order: contraction expansion; removal of user mentions,
/// the reserved word RT, emoji and ASCII smileys, numeric tokens, URLs,
/// and HTML markup; punctuation stripping; lemmatization of non-hashtag
/// tokens; hashtag `#` removal with the hashtag token kept unlemmatized;
/// lowercasing; stop-word removal. Returns an empty token list when
/// fewer than two tokens survive.
pub fn preprocess(text: &str, stopwords: &Stopwords) -> PreprocessedText {
    let mut expanded = text.to_string();
    for (re, replacement) in CONTRACTIONS.iter() {
        expanded = re.replace_all(&expanded, *replacement).into_owned();
    }
    let expanded = HTML_TAG.replace_all(&expanded, " ");
    let expanded = HTML_ENTITY.replace_all(&expanded, " ");

    let mut tokens: Vec<String> = Vec::new();
    let mut hashtag_tokens: BTreeSet<String> = BTreeSet::new();
    for raw in expanded.split_whitespace() {
        if raw.starts_with('@') || raw.starts_with(".@") {
            continue;
        }
        if raw.eq_ignore_ascii_case("rt") || raw.eq_ignore_ascii_case("fav") {
            continue;
        }
        if URL.is_match(raw) {
            continue;
        }
        if EMOTICONS.contains(raw) {
            continue;
        }
        let no_emoji: String = raw.chars().filter(|c| !is_emoji(*c)).collect();
        if no_emoji.is_empty() {
            continue;
        }
        if is_numeric_token(&no_emoji) {
            continue;
        }
        let is_hashtag = no_emoji.starts_with('#');
        let stripped: String = no_emoji.chars().filter(|c| !is_strippable_punct(*c)).collect();
        if stripped.is_empty() {
            continue;
        }
        let lowered = stripped.to_lowercase();
        let token = if is_hashtag { lowered } else { lemmatize(&lowered) };
        if token.is_empty() || stopwords.contains(&token) {
            continue;
        }
        if is_hashtag {
            hashtag_tokens.insert(token.clone());
        }
        tokens.push(token);
    }

    if tokens.len() < 2 {
        return PreprocessedText::default();
    }
    PreprocessedText {
        tokens,
        hashtag_tokens,
    }
}
