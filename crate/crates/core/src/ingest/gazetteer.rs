use std::fs::File;
use std::path::Path;

use serde::Deserialize;

use super::IngestError;
use crate::tweet::Geo;

/// The eleven destination countries, in the fixed resolution order.
pub const DESTINATION_COUNTRIES: [&str; 11] = [
    "DE", "ES", "PL", "FR", "SE", "GB", "AT", "HU", "CH", "NL", "IT",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_lat: f64,
    pub min_lon: f64,
    pub max_lat: f64,
    pub max_lon: f64,
}

impl BoundingBox {
    pub fn contains(&self, latitude: f64, longitude: f64) -> bool {
        latitude >= self.min_lat
            && latitude <= self.max_lat
            && longitude >= self.min_lon
            && longitude <= self.max_lon
    }
}

#[derive(Debug, Default)]
struct CountryEntry {
    code: String,
    aliases: Vec<String>,
    boxes: Vec<BoundingBox>,
}

/// Country aliases and coordinate boxes, in file order. Coordinate
/// matches use the first country whose box contains the point, so the
/// file order is the documented tie-break.
#[derive(Debug, Default)]
pub struct Gazetteer {
    countries: Vec<CountryEntry>,
}

#[derive(Deserialize)]
struct GazetteerRow {
    country: String,
    alias: Option<String>,
    min_lat: Option<f64>,
    min_lon: Option<f64>,
    max_lat: Option<f64>,
    max_lon: Option<f64>,
}

impl Gazetteer {
    /// Load from CSV with header `country,alias,min_lat,min_lon,max_lat,max_lon`.
    /// A row may carry an alias, a box, or both; rows aggregate per country.
    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let file = File::open(path).map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut reader = csv::Reader::from_reader(file);
        let mut gazetteer = Gazetteer::default();
        for (idx, row) in reader.deserialize::<GazetteerRow>().enumerate() {
            let row_no = idx + 2; // header is line 1
            let row = row.map_err(|e| IngestError::Gazetteer {
                row: row_no,
                message: e.to_string(),
            })?;
            let code = row.country.trim().to_uppercase();
            if !DESTINATION_COUNTRIES.contains(&code.as_str()) {
                return Err(IngestError::UnknownCountry(code));
            }
            let entry = gazetteer.entry_mut(&code);
            if let Some(alias) = row.alias.as_deref().map(str::trim).filter(|a| !a.is_empty()) {
                entry.aliases.push(alias.to_lowercase());
            }
            match (row.min_lat, row.min_lon, row.max_lat, row.max_lon) {
                (Some(min_lat), Some(min_lon), Some(max_lat), Some(max_lon)) => {
                    if min_lat >= max_lat || min_lon >= max_lon {
                        return Err(IngestError::Gazetteer {
                            row: row_no,
                            message: "bounding box must have min < max per axis".to_string(),
                        });
                    }
                    entry.boxes.push(BoundingBox {
                        min_lat,
                        min_lon,
                        max_lat,
                        max_lon,
                    });
                }
                (None, None, None, None) => {}
                _ => {
                    return Err(IngestError::Gazetteer {
                        row: row_no,
                        message: "bounding box needs all four coordinates".to_string(),
                    });
                }
            }
        }
        Ok(gazetteer)
    }

    fn entry_mut(&mut self, code: &str) -> &mut CountryEntry {
        if let Some(pos) = self.countries.iter().position(|c| c.code == code) {
            return &mut self.countries[pos];
        }
        self.countries.push(CountryEntry {
            code: code.to_string(),
            ..CountryEntry::default()
        });
        self.countries.last_mut().unwrap()
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.countries.iter().map(|c| c.code.as_str())
    }
}

/// Resolve geo metadata to a destination-country code.
///
/// Coordinates take precedence and match point-in-bounding-box against
/// countries in gazetteer order; place names match by case-insensitive
/// alias containment. No match is a value, not an error.
pub fn resolve_country(geo: &Geo, gazetteer: &Gazetteer) -> Option<String> {
    if let Some(coords) = &geo.coordinates {
        for entry in &gazetteer.countries {
            if entry
                .boxes
                .iter()
                .any(|b| b.contains(coords.latitude, coords.longitude))
            {
                return Some(entry.code.clone());
            }
        }
    }
    if let Some(place) = &geo.place {
        let place = place.to_lowercase();
        for entry in &gazetteer.countries {
            if entry.aliases.iter().any(|alias| place.contains(alias)) {
                return Some(entry.code.clone());
            }
        }
    }
    None
}
