//! A small SPARQL engine: exactly the constructs the knowledge-base
//! competency queries need, over an immutable in-memory graph.
//!
//! Supported: `SELECT` with variables and `COUNT` / `COUNT DISTINCT`
//! aggregates, basic graph patterns (`a`, `;` predicate-object lists),
//! `FILTER` with `||`, `=`, `regex` (flag `i`), `lcase`, `str`,
//! `GROUP BY`, `ORDER BY ASC/DESC`, `LIMIT`, and `PREFIX` declarations.
//! Everything else is rejected with an error naming the construct.

mod ast;
mod error;
mod eval;
mod index;
mod parser;
mod results;
pub mod server;

pub use ast::{Aggregate, Expr, IriRef, OrderBy, Projection, QueryAst, TermPattern, TriplePattern};
pub use error::SparqlError;
pub use eval::{evaluate, evaluate_indexed};
pub use index::IndexedGraph;
pub use parser::parse_query;
pub use results::ResultSet;

pub type Result<T> = std::result::Result<T, SparqlError>;
