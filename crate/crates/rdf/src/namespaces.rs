use std::collections::BTreeMap;

use crate::{Iri, RdfError, Result};

/// Default prefix table for the knowledge base vocabulary.
///
/// Mirrors `config/namespaces.toml`; the config file wins when loaded.
pub const DEFAULT_NAMESPACES: &[(&str, &str)] = &[
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
    ("sioc", "http://rdfs.org/sioc/ns#"),
    ("sioc_t", "http://rdfs.org/sioc/types#"),
    ("schema", "http://schema.org/"),
    ("dc", "http://purl.org/dc/terms/"),
    ("onyx", "http://www.gsi.dit.upm.es/ontologies/onyx/ns#"),
    ("wna", "http://www.gsi.dit.upm.es/ontologies/wnaffect/ns#"),
    ("nee", "http://www.ics.forth.gr/isl/oae/core#"),
    ("prov", "http://www.w3.org/ns/prov#"),
    ("mgkb", "https://migrationskb.github.io/MGKB#"),
    (
        "fibo_ind_ei_ei",
        "https://spec.edmcouncil.org/fibo/ontology/IND/EconomicIndicators/EconomicIndicators/",
    ),
    (
        "fibo_fnd_rel_rel",
        "https://spec.edmcouncil.org/fibo/ontology/FND/Relations/Relations/",
    ),
    (
        "fibo_fnd_dt_fd",
        "https://spec.edmcouncil.org/fibo/ontology/FND/DatesAndTimes/FinancialDates/",
    ),
    (
        "fibo_fnd_arr_asmt",
        "https://spec.edmcouncil.org/fibo/ontology/FND/Arrangements/Assessments/",
    ),
];

/// Prefix → namespace IRI map used to expand prefixed names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Namespaces {
    map: BTreeMap<String, String>,
}

impl Namespaces {
    /// Empty map, no prefixes known.
    pub fn empty() -> Self {
        Namespaces {
            map: BTreeMap::new(),
        }
    }

    /// Map preloaded with [`DEFAULT_NAMESPACES`].
    pub fn with_defaults() -> Self {
        let mut ns = Namespaces::empty();
        for (prefix, iri) in DEFAULT_NAMESPACES {
            ns.insert(*prefix, *iri);
        }
        ns
    }

    pub fn insert(&mut self, prefix: impl Into<String>, iri: impl Into<String>) {
        self.map.insert(prefix.into(), iri.into());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.map.get(prefix).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(p, i)| (p.as_str(), i.as_str()))
    }

    /// Expand `prefix:local` into a full IRI.
    pub fn expand(&self, prefixed: &str) -> Result<Iri> {
        let (prefix, local) = prefixed
            .split_once(':')
            .ok_or_else(|| RdfError::UnknownPrefix(prefixed.to_string()))?;
        let base = self
            .get(prefix)
            .ok_or_else(|| RdfError::UnknownPrefix(prefix.to_string()))?;
        Iri::new(format!("{base}{local}"))
    }

    /// Render an IRI as `prefix:local` when a namespace covers it and the
    /// local part is a simple name. Used by the Turtle serializer.
    pub fn shrink(&self, iri: &Iri) -> Option<String> {
        let full = iri.as_str();
        let mut best: Option<(&str, &str)> = None;
        for (prefix, base) in self.iter() {
            if let Some(local) = full.strip_prefix(base) {
                if best.is_none_or(|(_, b)| base.len() > b.len()) {
                    best = Some((prefix, base));
                    let _ = local;
                }
            }
        }
        let (prefix, base) = best?;
        let local = &full[base.len()..];
        let simple = !local.is_empty()
            && local
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
            && !local.starts_with('.')
            && !local.ends_with('.')
            && !local.starts_with('-')
            && !local.chars().next().is_some_and(|c| c.is_ascii_digit());
        if simple {
            Some(format!("{prefix}:{local}"))
        } else {
            None
        }
    }
}

impl Default for Namespaces {
    fn default() -> Self {
        Namespaces::with_defaults()
    }
}
