use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::Deserialize;

use super::IngestError;
use crate::tweet::{Coordinates, Geo, TweetRecord};

/// Supported dump encodings. Line-delimited JSON is the documented
/// interchange format; the enum leaves room for others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpFormat {
    JsonLines,
}

impl FromStr for DumpFormat {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" | "json-lines" => Ok(DumpFormat::JsonLines),
            other => Err(IngestError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumpWarning {
    pub line: usize,
    pub message: String,
}

/// Well-formed records plus one warning per skipped line.
#[derive(Debug, Default)]
pub struct DumpLoad {
    pub records: Vec<TweetRecord>,
    pub warnings: Vec<DumpWarning>,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<String>,
    text: Option<String>,
    created_at: Option<String>,
    geo: Option<RawGeo>,
}

#[derive(Deserialize)]
struct RawGeo {
    lat: Option<f64>,
    lon: Option<f64>,
    place: Option<String>,
}

/// Load a tweet dump. Malformed lines are skipped and reported with
/// their line number; an unreadable file is fatal.
pub fn load_dump(path: &Path, format: DumpFormat) -> Result<DumpLoad, IngestError> {
    let DumpFormat::JsonLines = format;
    let content = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;

    let mut load = DumpLoad::default();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for (idx, line) in content.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(line) {
            Ok(record) => {
                if seen_ids.insert(record.id.clone()) {
                    load.records.push(record);
                } else {
                    load.warn(line_no, format!("duplicate id `{}`", record.id));
                }
            }
            Err(message) => load.warn(line_no, message),
        }
    }
    Ok(load)
}

impl DumpLoad {
    fn warn(&mut self, line: usize, message: String) {
        log::warn!("dump line {line}: {message}");
        self.warnings.push(DumpWarning { line, message });
    }
}

fn parse_line(line: &str) -> Result<TweetRecord, String> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let id = raw.id.filter(|s| !s.is_empty()).ok_or("missing id")?;
    let text = raw.text.ok_or("missing text")?;
    let created_at = raw
        .created_at
        .ok_or("missing created_at")?
        .parse::<DateTime<Utc>>()
        .map_err(|e| format!("invalid created_at: {e}"))?;
    let raw_geo = raw.geo.ok_or("missing geo")?;

    let coordinates = match (raw_geo.lat, raw_geo.lon) {
        (Some(latitude), Some(longitude)) => {
            if !(-90.0..=90.0).contains(&latitude) {
                return Err(format!("latitude {latitude} out of range"));
            }
            if !(-180.0..=180.0).contains(&longitude) {
                return Err(format!("longitude {longitude} out of range"));
            }
            Some(Coordinates {
                latitude,
                longitude,
            })
        }
        (None, None) => None,
        _ => return Err("geo must carry both lat and lon".to_string()),
    };
    let place = raw_geo.place.filter(|p| !p.trim().is_empty());
    if coordinates.is_none() && place.is_none() {
        return Err("geo carries neither coordinates nor a place name".to_string());
    }

    Ok(TweetRecord {
        id,
        text,
        created_at,
        geo: Geo { coordinates, place },
        country_code: None,
    })
}
