//! RDF data model with deterministic, line-oriented serialization.
//!
//! The graph container keeps triples in a canonical order so that
//! serializing the same graph always yields the same bytes. N-Triples is
//! the normative format; Turtle output is a convenience that shares the
//! same ordering.

mod error;
mod graph;
mod namespaces;
mod ntriples;
mod term;
mod turtle;

pub use error::RdfError;
pub use graph::{Graph, Triple};
pub use namespaces::Namespaces;
pub use ntriples::{parse_ntriples, serialize_ntriples, write_ntriples};
pub use term::{xsd, BlankNode, Iri, Literal, Term};
pub use turtle::serialize_turtle;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, RdfError>;
