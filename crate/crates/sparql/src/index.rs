use std::collections::{HashMap, HashSet};

use mgkb_rdf::{Graph, Namespaces, Term};

/// Interned term id. Valid only for the index that produced it.
pub(crate) type TermId = u32;

/// An immutable, interned view of a graph with the lookup tables the
/// evaluator needs. Building it once and sharing it across queries is
/// what makes the endpoint safe for concurrent reads.
#[derive(Debug)]
pub struct IndexedGraph {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    triples: Vec<(TermId, TermId, TermId)>,
    contains: HashSet<(TermId, TermId, TermId)>,
    by_sp: HashMap<(TermId, TermId), Vec<TermId>>,
    by_po: HashMap<(TermId, TermId), Vec<TermId>>,
    by_s: HashMap<TermId, Vec<(TermId, TermId)>>,
    by_p: HashMap<TermId, Vec<(TermId, TermId)>>,
    by_o: HashMap<TermId, Vec<(TermId, TermId)>>,
    namespaces: Namespaces,
}

impl IndexedGraph {
    pub fn build(graph: &Graph) -> Self {
        let mut index = IndexedGraph {
            terms: Vec::new(),
            ids: HashMap::new(),
            triples: Vec::with_capacity(graph.len()),
            contains: HashSet::with_capacity(graph.len()),
            by_sp: HashMap::new(),
            by_po: HashMap::new(),
            by_s: HashMap::new(),
            by_p: HashMap::new(),
            by_o: HashMap::new(),
            namespaces: graph.namespaces().clone(),
        };
        for triple in graph {
            let s = index.intern(triple.subject().clone());
            let p = index.intern(Term::Iri(triple.predicate().clone()));
            let o = index.intern(triple.object().clone());
            index.triples.push((s, p, o));
            index.contains.insert((s, p, o));
            index.by_sp.entry((s, p)).or_default().push(o);
            index.by_po.entry((p, o)).or_default().push(s);
            index.by_s.entry(s).or_default().push((p, o));
            index.by_p.entry(p).or_default().push((s, o));
            index.by_o.entry(o).or_default().push((s, p));
        }
        index
    }

    fn intern(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = self.terms.len() as TermId;
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    pub fn namespaces(&self) -> &Namespaces {
        &self.namespaces
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub(crate) fn lookup(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub(crate) fn term(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub(crate) fn has(&self, s: TermId, p: TermId, o: TermId) -> bool {
        self.contains.contains(&(s, p, o))
    }

    pub(crate) fn all(&self) -> &[(TermId, TermId, TermId)] {
        &self.triples
    }

    pub(crate) fn objects(&self, s: TermId, p: TermId) -> &[TermId] {
        self.by_sp.get(&(s, p)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn subjects(&self, p: TermId, o: TermId) -> &[TermId] {
        self.by_po.get(&(p, o)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn from_subject(&self, s: TermId) -> &[(TermId, TermId)] {
        self.by_s.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn from_predicate(&self, p: TermId) -> &[(TermId, TermId)] {
        self.by_p.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn from_object(&self, o: TermId) -> &[(TermId, TermId)] {
        self.by_o.get(&o).map(Vec::as_slice).unwrap_or(&[])
    }
}
