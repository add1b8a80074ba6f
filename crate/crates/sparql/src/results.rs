use mgkb_rdf::Term;
use serde_json::{json, Map, Value};

/// Query results: a header of variable names and one binding row per
/// solution (or group). Unbound cells are explicit `None`s.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultSet {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl ResultSet {
    /// Standard SPARQL results JSON layout.
    pub fn to_json(&self) -> Value {
        let bindings: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (var, cell) in self.vars.iter().zip(row) {
                    if let Some(term) = cell {
                        obj.insert(var.clone(), term_json(term));
                    }
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "head": { "vars": self.vars },
            "results": { "bindings": bindings }
        })
    }

    /// Plain-text table for terminal output.
    pub fn to_table(&self) -> String {
        let render = |cell: &Option<Term>| -> String {
            cell.as_ref().map(|t| t.to_string()).unwrap_or_default()
        };
        let mut widths: Vec<usize> = self.vars.iter().map(|v| v.len() + 1).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(render(cell).chars().count());
            }
        }
        let mut out = String::new();
        let header: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{:<w$}", format!("?{v}"), w = widths[i]))
            .collect();
        out.push_str(&header.join(" | "));
        out.push('\n');
        out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:<w$}", render(c), w = widths[i]))
                .collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn term_json(term: &Term) -> Value {
    match term {
        Term::Iri(iri) => json!({ "type": "uri", "value": iri.as_str() }),
        Term::Blank(b) => json!({ "type": "bnode", "value": b.as_str() }),
        Term::Literal(lit) => {
            let mut obj = Map::new();
            obj.insert("type".into(), json!("literal"));
            obj.insert("value".into(), json!(lit.lexical()));
            if let Some(dt) = lit.datatype() {
                obj.insert("datatype".into(), json!(dt.as_str()));
            }
            if let Some(lang) = lit.lang() {
                obj.insert("xml:lang".into(), json!(lang));
            }
            Value::Object(obj)
        }
    }
}
