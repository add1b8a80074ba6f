use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use mgkb_rdf::{Graph, Iri, Namespaces, Term};
use regex::RegexBuilder;

use crate::ast::{Aggregate, Expr, IriRef, Projection, QueryAst, TermPattern};
use crate::index::{IndexedGraph, TermId};
use crate::results::ResultSet;
use crate::{Result, SparqlError};

/// Evaluate a query against a graph, building a one-shot index.
pub fn evaluate(ast: &QueryAst, graph: &Graph) -> Result<ResultSet> {
    evaluate_indexed(ast, &IndexedGraph::build(graph))
}

/// Evaluate a query against a prebuilt index.
///
/// Pipeline: basic graph pattern matching with consistent bindings,
/// filters per solution, grouping and aggregation, ordering, limit.
/// Row order is deterministic: the ORDER BY key first (numeric when both
/// values are numeric literals, codepoint order of the serialized term
/// otherwise), then a total tie-break on the serialized row.
pub fn evaluate_indexed(ast: &QueryAst, index: &IndexedGraph) -> Result<ResultSet> {
    let query = ResolvedQuery::resolve(ast, index)?;
    let solutions = query.solve_bgp(index);
    let solutions: Vec<_> = solutions
        .into_iter()
        .filter(|sol| {
            query
                .filters
                .iter()
                .all(|f| ebv(eval_expr(f, sol, index)) == Ok(true))
        })
        .collect();

    let header: Vec<String> = ast.projection.iter().map(|p| p.name().to_string()).collect();
    let mut rows: Vec<Vec<Option<Term>>> = Vec::new();

    if ast.has_aggregates() || !ast.group_by.is_empty() {
        let group_slots: Vec<Option<usize>> = ast
            .group_by
            .iter()
            .map(|v| query.var_slot(v))
            .collect();
        let mut groups: HashMap<Vec<Option<TermId>>, Vec<usize>> = HashMap::new();
        for (i, sol) in solutions.iter().enumerate() {
            let key: Vec<Option<TermId>> = group_slots
                .iter()
                .map(|slot| slot.and_then(|s| sol[s]))
                .collect();
            groups.entry(key).or_default().push(i);
        }
        if groups.is_empty() && ast.group_by.is_empty() {
            // aggregates over an ungrouped empty solution set still yield one row
            groups.insert(Vec::new(), Vec::new());
        }
        for (key, members) in groups {
            let mut row = Vec::with_capacity(ast.projection.len());
            for item in &ast.projection {
                match item {
                    Projection::Var(v) => {
                        let pos = ast
                            .group_by
                            .iter()
                            .position(|g| g == v)
                            .ok_or_else(|| {
                                SparqlError::parse(
                                    1,
                                    1,
                                    format!("projected variable ?{v} must appear in GROUP BY"),
                                )
                            })?;
                        row.push(key[pos].map(|id| index.term(id).clone()));
                    }
                    Projection::Aggregate { agg, .. } => {
                        let Aggregate::Count { distinct, var } = agg;
                        let slot = query.var_slot(var);
                        let count = match slot {
                            None => 0,
                            Some(s) => {
                                if *distinct {
                                    members
                                        .iter()
                                        .filter_map(|&i| solutions[i][s])
                                        .collect::<HashSet<_>>()
                                        .len()
                                } else {
                                    members.iter().filter(|&&i| solutions[i][s].is_some()).count()
                                }
                            }
                        };
                        row.push(Some(integer_term(count)));
                    }
                }
            }
            rows.push(row);
        }
    } else {
        for sol in &solutions {
            let row = ast
                .projection
                .iter()
                .map(|item| match item {
                    Projection::Var(v) => query
                        .var_slot(v)
                        .and_then(|s| sol[s])
                        .map(|id| index.term(id).clone()),
                    Projection::Aggregate { .. } => unreachable!(),
                })
                .collect();
            rows.push(row);
        }
    }

    sort_rows(&mut rows, ast, &header)?;
    if let Some(limit) = ast.limit {
        rows.truncate(limit);
    }
    Ok(ResultSet { vars: header, rows })
}

fn integer_term(n: usize) -> Term {
    Term::Literal(mgkb_rdf::Literal::typed(
        n.to_string(),
        Iri::new(mgkb_rdf::xsd::INTEGER).unwrap(),
    ))
}

pub(crate) fn sort_rows(
    rows: &mut [Vec<Option<Term>>],
    ast: &QueryAst,
    header: &[String],
) -> Result<()> {
    let order_col = match &ast.order_by {
        Some(ob) => Some((
            header
                .iter()
                .position(|h| *h == ob.key)
                .ok_or_else(|| SparqlError::OrderKeyNotProjected(ob.key.clone()))?,
            ob.descending,
        )),
        None => None,
    };
    rows.sort_by(|a, b| {
        if let Some((col, desc)) = order_col {
            let mut ord = compare_cells(&a[col], &b[col]);
            if desc {
                ord = ord.reverse();
            }
            if ord != Ordering::Equal {
                return ord;
            }
        }
        serialize_row(a).cmp(&serialize_row(b))
    });
    Ok(())
}

/// Numeric comparison when both sides are numeric literals, otherwise
/// codepoint order of the serialized term. Unbound sorts before bound.
pub(crate) fn compare_cells(a: &Option<Term>, b: &Option<Term>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => {
            let nx = x.as_literal().and_then(|l| l.numeric_value());
            let ny = y.as_literal().and_then(|l| l.numeric_value());
            match (nx, ny) {
                (Some(nx), Some(ny)) => nx.partial_cmp(&ny).unwrap_or(Ordering::Equal),
                _ => x.to_string().cmp(&y.to_string()),
            }
        }
    }
}

pub(crate) fn serialize_row(row: &[Option<Term>]) -> String {
    row.iter()
        .map(|cell| cell.as_ref().map(|t| t.to_string()).unwrap_or_default())
        .collect::<Vec<_>>()
        .join("\u{1f}")
}

/// A query with prefixes expanded, variables numbered, and constants
/// interned against one specific graph index.
struct ResolvedQuery {
    vars: Vec<String>,
    patterns: Vec<[Pat; 3]>,
    filters: Vec<RExpr>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Pat {
    Var(usize),
    Bound(TermId),
    /// Constant term that does not occur in the graph: never matches.
    Absent,
}

enum RExpr {
    Or(Box<RExpr>, Box<RExpr>),
    Eq(Box<RExpr>, Box<RExpr>),
    Regex {
        text: Box<RExpr>,
        regex: regex::Regex,
    },
    Lcase(Box<RExpr>),
    Str(Box<RExpr>),
    Var(Option<usize>),
    Const(Term),
}

impl ResolvedQuery {
    fn resolve(ast: &QueryAst, index: &IndexedGraph) -> Result<Self> {
        let mut namespaces = index.namespaces().clone();
        for (prefix, iri) in &ast.prefixes {
            namespaces.insert(prefix.clone(), iri.clone());
        }

        let mut vars: Vec<String> = Vec::new();
        let slot = |name: &str, vars: &mut Vec<String>| -> usize {
            if let Some(i) = vars.iter().position(|v| v == name) {
                i
            } else {
                vars.push(name.to_string());
                vars.len() - 1
            }
        };

        let mut patterns = Vec::with_capacity(ast.patterns.len());
        for p in &ast.patterns {
            let mut elems = [Pat::Absent, Pat::Absent, Pat::Absent];
            for (i, tp) in [&p.subject, &p.predicate, &p.object].into_iter().enumerate() {
                elems[i] = match tp {
                    TermPattern::Var(v) => Pat::Var(slot(v, &mut vars)),
                    TermPattern::Iri(iri) => {
                        let term = Term::Iri(resolve_iri(iri, &namespaces)?);
                        index.lookup(&term).map_or(Pat::Absent, Pat::Bound)
                    }
                    TermPattern::Literal(lit) => {
                        let term = Term::Literal(lit.clone());
                        index.lookup(&term).map_or(Pat::Absent, Pat::Bound)
                    }
                };
            }
            patterns.push(elems);
        }

        let filters = ast
            .filters
            .iter()
            .map(|f| resolve_expr(f, &vars, &namespaces))
            .collect::<Result<Vec<_>>>()?;

        Ok(ResolvedQuery {
            vars,
            patterns,
            filters,
        })
    }

    fn var_slot(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn solve_bgp(&self, index: &IndexedGraph) -> Vec<Vec<Option<TermId>>> {
        let mut solutions: Vec<Vec<Option<TermId>>> = vec![vec![None; self.vars.len()]];
        for pattern in &self.patterns {
            let mut next = Vec::new();
            for binding in &solutions {
                extend_with_pattern(pattern, binding, index, &mut next);
            }
            solutions = next;
            if solutions.is_empty() {
                break;
            }
        }
        solutions
    }
}

fn resolve_iri(iri: &IriRef, namespaces: &Namespaces) -> Result<Iri> {
    match iri {
        IriRef::Full(s) => Ok(Iri::new(s.clone())?),
        IriRef::Prefixed { prefix, local } => namespaces
            .expand(&format!("{prefix}:{local}"))
            .map_err(|_| SparqlError::UnknownPrefix(prefix.clone())),
    }
}

fn resolve_expr(expr: &Expr, vars: &[String], namespaces: &Namespaces) -> Result<RExpr> {
    Ok(match expr {
        Expr::Or(a, b) => RExpr::Or(
            Box::new(resolve_expr(a, vars, namespaces)?),
            Box::new(resolve_expr(b, vars, namespaces)?),
        ),
        Expr::Eq(a, b) => RExpr::Eq(
            Box::new(resolve_expr(a, vars, namespaces)?),
            Box::new(resolve_expr(b, vars, namespaces)?),
        ),
        Expr::Regex {
            text,
            pattern,
            flags,
        } => RExpr::Regex {
            text: Box::new(resolve_expr(text, vars, namespaces)?),
            regex: RegexBuilder::new(pattern)
                .case_insensitive(flags.contains('i'))
                .build()
                .map_err(|e| SparqlError::InvalidRegex {
                    pattern: pattern.clone(),
                    message: e.to_string(),
                })?,
        },
        Expr::Lcase(e) => RExpr::Lcase(Box::new(resolve_expr(e, vars, namespaces)?)),
        Expr::Str(e) => RExpr::Str(Box::new(resolve_expr(e, vars, namespaces)?)),
        Expr::Var(v) => RExpr::Var(vars.iter().position(|x| x == v)),
        Expr::Literal(lit) => RExpr::Const(Term::Literal(lit.clone())),
        Expr::Iri(iri) => RExpr::Const(Term::Iri(resolve_iri(iri, namespaces)?)),
    })
}

fn extend_with_pattern(
    pattern: &[Pat; 3],
    binding: &[Option<TermId>],
    index: &IndexedGraph,
    out: &mut Vec<Vec<Option<TermId>>>,
) {
    let resolved: Vec<Option<TermId>> = pattern
        .iter()
        .map(|p| match p {
            Pat::Bound(id) => Some(*id),
            Pat::Var(slot) => binding[*slot],
            Pat::Absent => None,
        })
        .collect();
    if pattern.iter().any(|p| matches!(p, Pat::Absent)) {
        return;
    }
    let (s, p, o) = (resolved[0], resolved[1], resolved[2]);

    let mut push_candidate = |triple: (TermId, TermId, TermId)| {
        if let Some(next) = unify(pattern, binding, triple) {
            out.push(next);
        }
    };

    match (s, p, o) {
        (Some(s), Some(p), Some(o)) => {
            if index.has(s, p, o) {
                push_candidate((s, p, o));
            }
        }
        (Some(s), Some(p), None) => {
            for &o in index.objects(s, p) {
                push_candidate((s, p, o));
            }
        }
        (None, Some(p), Some(o)) => {
            for &s in index.subjects(p, o) {
                push_candidate((s, p, o));
            }
        }
        (Some(s), None, Some(o)) => {
            for &(p, oo) in index.from_subject(s) {
                if oo == o {
                    push_candidate((s, p, o));
                }
            }
        }
        (Some(s), None, None) => {
            for &(p, o) in index.from_subject(s) {
                push_candidate((s, p, o));
            }
        }
        (None, Some(p), None) => {
            for &(s, o) in index.from_predicate(p) {
                push_candidate((s, p, o));
            }
        }
        (None, None, Some(o)) => {
            for &(s, p) in index.from_object(o) {
                push_candidate((s, p, o));
            }
        }
        (None, None, None) => {
            for &(s, p, o) in index.all() {
                push_candidate((s, p, o));
            }
        }
    }
}

/// Try to extend `binding` so that `pattern` matches `triple`.
fn unify(
    pattern: &[Pat; 3],
    binding: &[Option<TermId>],
    triple: (TermId, TermId, TermId),
) -> Option<Vec<Option<TermId>>> {
    let values = [triple.0, triple.1, triple.2];
    let mut next = binding.to_vec();
    for (pat, value) in pattern.iter().zip(values) {
        match pat {
            Pat::Bound(id) => {
                if *id != value {
                    return None;
                }
            }
            Pat::Var(slot) => match next[*slot] {
                Some(existing) if existing != value => return None,
                _ => next[*slot] = Some(value),
            },
            Pat::Absent => return None,
        }
    }
    Some(next)
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Term(Term),
    Str(String),
    Bool(bool),
}

type ExprResult = std::result::Result<Value, ()>;

fn eval_expr(expr: &RExpr, binding: &[Option<TermId>], index: &IndexedGraph) -> ExprResult {
    match expr {
        RExpr::Var(slot) => slot
            .and_then(|s| binding[s])
            .map(|id| Value::Term(index.term(id).clone()))
            .ok_or(()),
        RExpr::Const(t) => Ok(Value::Term(t.clone())),
        RExpr::Str(inner) => match eval_expr(inner, binding, index)? {
            Value::Term(Term::Iri(iri)) => Ok(Value::Str(iri.as_str().to_string())),
            Value::Term(Term::Literal(l)) => Ok(Value::Str(l.lexical().to_string())),
            Value::Str(s) => Ok(Value::Str(s)),
            _ => Err(()),
        },
        RExpr::Lcase(inner) => {
            let s = string_value(eval_expr(inner, binding, index)?)?;
            Ok(Value::Str(s.to_lowercase()))
        }
        RExpr::Regex { text, regex } => {
            let s = string_value(eval_expr(text, binding, index)?)?;
            Ok(Value::Bool(regex.is_match(&s)))
        }
        RExpr::Eq(a, b) => {
            let va = eval_expr(a, binding, index)?;
            let vb = eval_expr(b, binding, index)?;
            equals(va, vb).map(Value::Bool)
        }
        RExpr::Or(a, b) => {
            let ra = ebv(eval_expr(a, binding, index));
            let rb = ebv(eval_expr(b, binding, index));
            match (ra, rb) {
                (Ok(true), _) | (_, Ok(true)) => Ok(Value::Bool(true)),
                (Ok(false), Ok(false)) => Ok(Value::Bool(false)),
                _ => Err(()),
            }
        }
    }
}

/// Strings for lcase/regex: computed strings and plain or language-tagged
/// literals qualify, anything else is a type error.
fn string_value(v: Value) -> std::result::Result<String, ()> {
    match v {
        Value::Str(s) => Ok(s),
        Value::Term(Term::Literal(l)) if l.datatype().is_none() => Ok(l.lexical().to_string()),
        _ => Err(()),
    }
}

fn equals(a: Value, b: Value) -> std::result::Result<bool, ()> {
    match (a, b) {
        (Value::Bool(x), Value::Bool(y)) => Ok(x == y),
        (Value::Str(x), Value::Str(y)) => Ok(x == y),
        (Value::Str(s), Value::Term(Term::Literal(l)))
        | (Value::Term(Term::Literal(l)), Value::Str(s))
            if l.datatype().is_none() && l.lang().is_none() =>
        {
            Ok(l.lexical() == s)
        }
        (Value::Term(x), Value::Term(y)) => {
            let nx = x.as_literal().and_then(|l| l.numeric_value());
            let ny = y.as_literal().and_then(|l| l.numeric_value());
            match (nx, ny) {
                (Some(nx), Some(ny)) => Ok(nx == ny),
                _ => Ok(x == y),
            }
        }
        _ => Err(()),
    }
}

fn ebv(r: ExprResult) -> std::result::Result<bool, ()> {
    match r? {
        Value::Bool(b) => Ok(b),
        Value::Str(s) => Ok(!s.is_empty()),
        Value::Term(Term::Literal(l)) => {
            if l.datatype().map(|d| d.as_str()) == Some(mgkb_rdf::xsd::BOOLEAN) {
                Ok(l.lexical() == "true" || l.lexical() == "1")
            } else if l.is_numeric() {
                Ok(l.numeric_value().is_some_and(|v| v != 0.0))
            } else if l.datatype().is_none() {
                Ok(!l.lexical().is_empty())
            } else {
                Err(())
            }
        }
        Value::Term(_) => Err(()),
    }
}
