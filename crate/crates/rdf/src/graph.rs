use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;

use crate::{Iri, Namespaces, RdfError, Result, Term};

/// A single RDF triple. Subjects are IRIs or blank nodes, never literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Self> {
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }
}

impl fmt::Display for Triple {
    /// The N-Triples line for this triple, without the trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A set of triples plus the prefix map used for prefixed-name expansion.
///
/// Duplicate inserts are ignored; iteration order is the canonical
/// structural order of the terms.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    namespaces: Namespaces,
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            triples: BTreeSet::new(),
            namespaces: Namespaces::with_defaults(),
        }
    }

    pub fn with_namespaces(namespaces: Namespaces) -> Self {
        Graph {
            triples: BTreeSet::new(),
            namespaces,
        }
    }

    pub fn namespaces(&self) -> &Namespaces {
        &self.namespaces
    }

    pub fn namespaces_mut(&mut self) -> &mut Namespaces {
        &mut self.namespaces
    }

    /// Insert a triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        self.triples.extend(triples);
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    /// Set equality on triples, ignoring the namespace table.
    pub fn same_triples(&self, other: &Graph) -> bool {
        self.triples == other.triples
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}
