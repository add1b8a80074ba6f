//! Pipeline library for building a migration-attitudes knowledge base
//! from geotagged tweet dumps.
//!
//! The stages mirror the command-line pipeline: ingest and preprocess
//! dumps ([`ingest`]), expand the crawl lexicon ([`lexicon`]), train
//! skip-gram embeddings ([`embed`]), train and apply the embedded topic
//! model ([`etm`]), attach sentiment and hate labels ([`annotate`]),
//! link entity mentions ([`entity`]), integrate economic indicators
//! ([`indicators`]), and materialize the RDF graph ([`kb`]).

pub mod annotate;
pub mod embed;
pub mod entity;
pub mod etm;
pub mod indicators;
pub mod ingest;
pub mod kb;
pub mod lexicon;
pub mod tweet;
