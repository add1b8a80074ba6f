use crate::{Graph, Term};

/// Serialize a graph as simple Turtle.
///
/// Convenience output that shares the canonical N-Triples ordering: a
/// `@prefix` header followed by one triple per line with prefixed names
/// where the namespace table covers them. No multi-line abbreviations,
/// so the output stays diffable. N-Triples remains the normative format.
pub fn serialize_turtle(graph: &Graph) -> String {
    let ns = graph.namespaces();
    let mut out = String::new();
    for (prefix, iri) in ns.iter() {
        out.push_str(&format!("@prefix {prefix}: <{iri}> .\n"));
    }
    if !out.is_empty() {
        out.push('\n');
    }

    let render = |term: &Term| -> String {
        match term {
            Term::Iri(iri) => ns.shrink(iri).unwrap_or_else(|| iri.to_string()),
            other => other.to_string(),
        }
    };

    let mut lines: Vec<(String, String)> = graph
        .iter()
        .map(|t| {
            let pred = ns
                .shrink(t.predicate())
                .unwrap_or_else(|| t.predicate().to_string());
            (
                t.to_string(),
                format!("{} {} {} .\n", render(t.subject()), pred, render(t.object())),
            )
        })
        .collect();
    lines.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    for (_, line) in lines {
        out.push_str(&line);
    }
    out
}
