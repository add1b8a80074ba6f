//! Brute-force equivalence: the evaluator must agree with a naive oracle
//! that enumerates every assignment of query variables to graph terms and
//! re-derives filtering, grouping, ordering, and limits from the
//! documented semantics.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use mgkb_rdf::{Graph, Iri, Literal, Term, Triple};
use mgkb_sparql::{
    evaluate, Aggregate, Expr, OrderBy, Projection, QueryAst, TermPattern, TriplePattern,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

type Row = Vec<Option<String>>;

/// Render a result set as comparable rows of serialized cells.
fn rendered(rs: &mgkb_sparql::ResultSet) -> Vec<Row> {
    rs.rows
        .iter()
        .map(|row| row.iter().map(|c| c.as_ref().map(|t| t.to_string())).collect())
        .collect()
}

// ---------------------------------------------------------------------
// the oracle
// ---------------------------------------------------------------------

fn oracle_evaluate(ast: &QueryAst, graph: &Graph) -> Vec<Row> {
    // term pool and membership set
    let mut pool: BTreeSet<Term> = BTreeSet::new();
    let mut triples: HashSet<(Term, Term, Term)> = HashSet::new();
    for t in graph {
        let s = t.subject().clone();
        let p = Term::Iri(t.predicate().clone());
        let o = t.object().clone();
        pool.insert(s.clone());
        pool.insert(p.clone());
        pool.insert(o.clone());
        triples.insert((s, p, o));
    }
    let pool: Vec<Term> = pool.into_iter().collect();

    let mut vars: Vec<String> = Vec::new();
    for p in &ast.patterns {
        for tp in [&p.subject, &p.predicate, &p.object] {
            if let TermPattern::Var(v) = tp {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }

    let accepts = |binding: &HashMap<String, Term>| -> bool {
        ast.patterns.iter().all(|p| {
            let s = subst(&p.subject, binding, graph);
            let pr = subst(&p.predicate, binding, graph);
            let o = subst(&p.object, binding, graph);
            triples.contains(&(s, pr, o))
        }) && ast
            .filters
            .iter()
            .all(|f| oracle_ebv(oracle_expr(f, binding, graph)) == Some(true))
    };

    // enumerate assignments of every variable over all graph terms
    let mut solutions: Vec<HashMap<String, Term>> = Vec::new();
    if vars.is_empty() {
        let binding = HashMap::new();
        if accepts(&binding) {
            solutions.push(binding);
        }
    } else if !pool.is_empty() {
        let mut assignment: Vec<usize> = vec![0; vars.len()];
        'outer: loop {
            let binding: HashMap<String, Term> = vars
                .iter()
                .cloned()
                .zip(assignment.iter().map(|&i| pool[i].clone()))
                .collect();
            if accepts(&binding) {
                solutions.push(binding);
            }
            // odometer increment
            for slot in (0..assignment.len()).rev() {
                assignment[slot] += 1;
                if assignment[slot] < pool.len() {
                    continue 'outer;
                }
                assignment[slot] = 0;
            }
            break;
        }
    }

    // project / group / aggregate
    let has_agg = ast
        .projection
        .iter()
        .any(|p| matches!(p, Projection::Aggregate { .. }));
    let mut rows: Vec<Row> = Vec::new();
    if has_agg || !ast.group_by.is_empty() {
        let mut groups: HashMap<Vec<Option<String>>, Vec<&HashMap<String, Term>>> = HashMap::new();
        for sol in &solutions {
            let key: Vec<Option<String>> = ast
                .group_by
                .iter()
                .map(|v| sol.get(v).map(|t| t.to_string()))
                .collect();
            groups.entry(key).or_default().push(sol);
        }
        if groups.is_empty() && ast.group_by.is_empty() {
            groups.insert(Vec::new(), Vec::new());
        }
        for (key, members) in groups {
            let mut row = Vec::new();
            for item in &ast.projection {
                match item {
                    Projection::Var(v) => {
                        let pos = ast.group_by.iter().position(|g| g == v).unwrap();
                        row.push(key[pos].clone());
                    }
                    Projection::Aggregate {
                        agg: Aggregate::Count { distinct, var },
                        ..
                    } => {
                        let n = if *distinct {
                            members
                                .iter()
                                .filter_map(|m| m.get(var).map(|t| t.to_string()))
                                .collect::<HashSet<_>>()
                                .len()
                        } else {
                            members.iter().filter(|m| m.contains_key(var)).count()
                        };
                        row.push(Some(format!(
                            "\"{n}\"^^<http://www.w3.org/2001/XMLSchema#integer>"
                        )));
                    }
                }
            }
            rows.push(row);
        }
    } else {
        for sol in &solutions {
            rows.push(
                ast.projection
                    .iter()
                    .map(|item| match item {
                        Projection::Var(v) => sol.get(v).map(|t| t.to_string()),
                        _ => unreachable!(),
                    })
                    .collect(),
            );
        }
    }

    // order: key column first, then total tie-break on the serialized row
    let header: Vec<&str> = ast.projection.iter().map(|p| p.name()).collect();
    let order_col = ast
        .order_by
        .as_ref()
        .map(|ob| {
            (
                header.iter().position(|h| *h == ob.key).expect("projected"),
                ob.descending,
            )
        });
    rows.sort_by(|a, b| {
        if let Some((col, desc)) = order_col {
            let mut ord = oracle_compare(&a[col], &b[col]);
            if desc {
                ord = ord.reverse();
            }
            if ord != Ordering::Equal {
                return ord;
            }
        }
        a.iter()
            .map(|c| c.clone().unwrap_or_default())
            .collect::<Vec<_>>()
            .join("\u{1f}")
            .cmp(
                &b.iter()
                    .map(|c| c.clone().unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join("\u{1f}"),
            )
    });
    if let Some(limit) = ast.limit {
        rows.truncate(limit);
    }
    rows
}

fn subst(tp: &TermPattern, binding: &HashMap<String, Term>, graph: &Graph) -> Term {
    match tp {
        TermPattern::Var(v) => binding[v].clone(),
        TermPattern::Iri(iref) => Term::Iri(resolve(iref, graph)),
        TermPattern::Literal(l) => Term::Literal(l.clone()),
    }
}

fn resolve(iref: &mgkb_sparql::IriRef, graph: &Graph) -> Iri {
    match iref {
        mgkb_sparql::IriRef::Full(s) => Iri::new(s.clone()).unwrap(),
        mgkb_sparql::IriRef::Prefixed { prefix, local } => graph
            .namespaces()
            .expand(&format!("{prefix}:{local}"))
            .unwrap(),
    }
}

/// Oracle expression values: None = type error.
#[derive(Debug, Clone, PartialEq)]
enum OVal {
    Term(Term),
    Str(String),
    Bool(bool),
}

fn oracle_expr(e: &Expr, binding: &HashMap<String, Term>, graph: &Graph) -> Option<OVal> {
    match e {
        Expr::Var(v) => binding.get(v).cloned().map(OVal::Term),
        Expr::Literal(l) => Some(OVal::Term(Term::Literal(l.clone()))),
        Expr::Iri(iref) => Some(OVal::Term(Term::Iri(resolve(iref, graph)))),
        Expr::Str(inner) => match oracle_expr(inner, binding, graph)? {
            OVal::Term(Term::Iri(i)) => Some(OVal::Str(i.as_str().to_string())),
            OVal::Term(Term::Literal(l)) => Some(OVal::Str(l.lexical().to_string())),
            OVal::Str(s) => Some(OVal::Str(s)),
            _ => None,
        },
        Expr::Lcase(inner) => {
            Some(OVal::Str(oracle_string(oracle_expr(inner, binding, graph)?)?.to_lowercase()))
        }
        Expr::Regex {
            text,
            pattern,
            flags,
        } => {
            let s = oracle_string(oracle_expr(text, binding, graph)?)?;
            let re = regex::RegexBuilder::new(pattern)
                .case_insensitive(flags.contains('i'))
                .build()
                .ok()?;
            Some(OVal::Bool(re.is_match(&s)))
        }
        Expr::Eq(a, b) => {
            let va = oracle_expr(a, binding, graph)?;
            let vb = oracle_expr(b, binding, graph)?;
            oracle_eq(va, vb).map(OVal::Bool)
        }
        Expr::Or(a, b) => {
            let ra = oracle_ebv(oracle_expr(a, binding, graph));
            let rb = oracle_ebv(oracle_expr(b, binding, graph));
            match (ra, rb) {
                (Some(true), _) | (_, Some(true)) => Some(OVal::Bool(true)),
                (Some(false), Some(false)) => Some(OVal::Bool(false)),
                _ => None,
            }
        }
    }
}

fn oracle_string(v: OVal) -> Option<String> {
    match v {
        OVal::Str(s) => Some(s),
        OVal::Term(Term::Literal(l)) if l.datatype().is_none() => Some(l.lexical().to_string()),
        _ => None,
    }
}

fn oracle_eq(a: OVal, b: OVal) -> Option<bool> {
    match (a, b) {
        (OVal::Bool(x), OVal::Bool(y)) => Some(x == y),
        (OVal::Str(x), OVal::Str(y)) => Some(x == y),
        (OVal::Str(s), OVal::Term(Term::Literal(l)))
        | (OVal::Term(Term::Literal(l)), OVal::Str(s))
            if l.datatype().is_none() && l.lang().is_none() =>
        {
            Some(l.lexical() == s)
        }
        (OVal::Term(x), OVal::Term(y)) => {
            let nx = x.as_literal().and_then(|l| l.numeric_value());
            let ny = y.as_literal().and_then(|l| l.numeric_value());
            match (nx, ny) {
                (Some(nx), Some(ny)) => Some(nx == ny),
                _ => Some(x == y),
            }
        }
        _ => None,
    }
}

fn oracle_ebv(v: Option<OVal>) -> Option<bool> {
    match v? {
        OVal::Bool(b) => Some(b),
        OVal::Str(s) => Some(!s.is_empty()),
        OVal::Term(Term::Literal(l)) => {
            if l.is_numeric() {
                Some(l.numeric_value()? != 0.0)
            } else if l.datatype().is_none() {
                Some(!l.lexical().is_empty())
            } else {
                None
            }
        }
        _ => None,
    }
}

fn oracle_compare(a: &Option<String>, b: &Option<String>) -> Ordering {
    // serialized integer counts compare numerically, like the evaluator
    let parse_num = |s: &Option<String>| -> Option<f64> {
        let s = s.as_ref()?;
        let body = s.strip_prefix('"')?;
        let (lex, rest) = body.split_once('"')?;
        let dt = rest.strip_prefix("^^<")?.strip_suffix('>')?;
        if matches!(
            dt,
            "http://www.w3.org/2001/XMLSchema#integer"
                | "http://www.w3.org/2001/XMLSchema#decimal"
                | "http://www.w3.org/2001/XMLSchema#double"
                | "http://www.w3.org/2001/XMLSchema#float"
        ) {
            lex.parse().ok()
        } else {
            None
        }
    };
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => match (parse_num(a), parse_num(b)) {
            (Some(nx), Some(ny)) => nx.partial_cmp(&ny).unwrap_or(Ordering::Equal),
            _ => x.cmp(y),
        },
    }
}

// ---------------------------------------------------------------------
// random graphs and queries
// ---------------------------------------------------------------------

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let words = ["refugee", "Immigrant", "alpha", "Beta", "gamma", ""];
    let mut g = Graph::new();
    let n_s = rng.gen_range(3..10usize);
    let n_p = rng.gen_range(2..6usize);
    let n_triples = rng.gen_range(0..=200usize);
    for _ in 0..n_triples {
        let s = Term::iri(format!("http://x.test/s{}", rng.gen_range(0..n_s))).unwrap();
        let p = Iri::new(format!("http://x.test/p{}", rng.gen_range(0..n_p))).unwrap();
        let o = match rng.gen_range(0..4) {
            0 => Term::iri(format!("http://x.test/s{}", rng.gen_range(0..n_s))).unwrap(),
            1 => Term::plain(words[rng.gen_range(0..words.len())]),
            2 => Term::Literal(Literal::typed(
                rng.gen_range(0..5).to_string(),
                Iri::new(mgkb_rdf::xsd::INTEGER).unwrap(),
            )),
            _ => Term::Literal(
                Literal::lang_tagged(words[rng.gen_range(0..words.len())], "en").unwrap(),
            ),
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

fn random_query(rng: &mut ChaCha8Rng, graph: &Graph) -> QueryAst {
    let var_names = ["a", "b", "c"];
    let n_vars = rng.gen_range(1..=3usize);
    let n_patterns = rng.gen_range(1..=3usize);

    let rand_const_pred = |rng: &mut ChaCha8Rng| {
        mgkb_sparql::IriRef::Full(format!("http://x.test/p{}", rng.gen_range(0..6)))
    };
    let rand_const_term = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => TermPattern::Iri(mgkb_sparql::IriRef::Full(format!(
            "http://x.test/s{}",
            rng.gen_range(0..10)
        ))),
        1 => TermPattern::Literal(Literal::plain(
            ["refugee", "alpha", "Beta"][rng.gen_range(0..3)],
        )),
        _ => TermPattern::Literal(Literal::typed(
            rng.gen_range(0..5).to_string(),
            Iri::new(mgkb_rdf::xsd::INTEGER).unwrap(),
        )),
    };

    let mut patterns = Vec::new();
    for _ in 0..n_patterns {
        let subject = if rng.gen_bool(0.7) {
            TermPattern::Var(var_names[rng.gen_range(0..n_vars)].into())
        } else {
            TermPattern::Iri(mgkb_sparql::IriRef::Full(format!(
                "http://x.test/s{}",
                rng.gen_range(0..10)
            )))
        };
        let predicate = if rng.gen_bool(0.35) {
            TermPattern::Var(var_names[rng.gen_range(0..n_vars)].into())
        } else {
            TermPattern::Iri(rand_const_pred(rng))
        };
        let object = if rng.gen_bool(0.6) {
            TermPattern::Var(var_names[rng.gen_range(0..n_vars)].into())
        } else {
            rand_const_term(rng)
        };
        patterns.push(TriplePattern {
            subject,
            predicate,
            object,
        });
    }

    // variables actually bound by the patterns; force at least one
    if !patterns
        .iter()
        .any(|p| [&p.subject, &p.predicate, &p.object]
            .iter()
            .any(|tp| matches!(tp, TermPattern::Var(_))))
    {
        patterns[0].subject = TermPattern::Var("a".into());
    }
    let mut bound: Vec<String> = Vec::new();
    for p in &patterns {
        for tp in [&p.subject, &p.predicate, &p.object] {
            if let TermPattern::Var(v) = tp {
                if !bound.contains(v) {
                    bound.push(v.clone());
                }
            }
        }
    }

    let mut filters = Vec::new();
    if rng.gen_bool(0.5) {
        let var = bound[rng.gen_range(0..bound.len())].clone();
        let leaf = |rng: &mut ChaCha8Rng, var: &str| -> Expr {
            match rng.gen_range(0..3) {
                0 => Expr::Regex {
                    text: Box::new(Expr::Var(var.to_string())),
                    pattern: ["refugee", "a", "e"][rng.gen_range(0..3)].to_string(),
                    flags: if rng.gen_bool(0.5) { "i" } else { "" }.to_string(),
                },
                1 => Expr::Eq(
                    Box::new(Expr::Lcase(Box::new(Expr::Str(Box::new(Expr::Var(
                        var.to_string(),
                    )))))),
                    Box::new(Expr::Literal(Literal::plain("refugee"))),
                ),
                _ => Expr::Eq(
                    Box::new(Expr::Var(var.to_string())),
                    Box::new(Expr::Literal(Literal::plain("alpha"))),
                ),
            }
        };
        let mut expr = leaf(rng, &var);
        if rng.gen_bool(0.5) {
            let var2 = bound[rng.gen_range(0..bound.len())].clone();
            expr = Expr::Or(Box::new(expr), Box::new(leaf(rng, &var2)));
        }
        filters.push(expr);
    }

    let aggregated = rng.gen_bool(0.5);
    let (projection, group_by) = if aggregated {
        let mut group: Vec<String> = bound
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        if group.is_empty() && rng.gen_bool(0.7) {
            group.push(bound[0].clone());
        }
        let mut projection: Vec<Projection> =
            group.iter().map(|v| Projection::Var(v.clone())).collect();
        projection.push(Projection::Aggregate {
            agg: Aggregate::Count {
                distinct: rng.gen_bool(0.5),
                var: bound[rng.gen_range(0..bound.len())].clone(),
            },
            alias: "n".to_string(),
        });
        (projection, group)
    } else {
        let mut proj: Vec<Projection> = bound
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .map(|v| Projection::Var(v.clone()))
            .collect();
        if proj.is_empty() {
            proj.push(Projection::Var(bound[0].clone()));
        }
        (proj, Vec::new())
    };

    let order_by = if rng.gen_bool(0.7) {
        let names: Vec<&str> = projection.iter().map(|p| p.name()).collect();
        Some(OrderBy {
            key: names[rng.gen_range(0..names.len())].to_string(),
            descending: rng.gen_bool(0.5),
        })
    } else {
        None
    };
    let limit = if rng.gen_bool(0.5) {
        Some(rng.gen_range(0..6))
    } else {
        None
    };

    let _ = graph;
    QueryAst {
        prefixes: Vec::new(),
        projection,
        patterns,
        filters,
        group_by,
        order_by,
        limit,
    }
}

#[test]
fn evaluator_matches_brute_force_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..50 {
        let graph = random_graph(&mut rng);
        let ast = random_query(&mut rng, &graph);
        let got = rendered(&evaluate(&ast, &graph).unwrap());
        let want = oracle_evaluate(&ast, &graph);
        assert_eq!(got, want, "case {case} diverged: {ast:?}");
    }
}

#[test]
fn count_distinct_never_exceeds_count_and_limit_is_prefix() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..25 {
        let graph = random_graph(&mut rng);
        let mut ast = random_query(&mut rng, &graph);
        // force an aggregated shape with both variants
        let var = match ast
            .patterns
            .iter()
            .find_map(|p| match &p.subject {
                TermPattern::Var(v) => Some(v.clone()),
                _ => None,
            }) {
            Some(v) => v,
            None => continue,
        };
        ast.group_by = vec![var.clone()];
        ast.projection = vec![
            Projection::Var(var.clone()),
            Projection::Aggregate {
                agg: Aggregate::Count {
                    distinct: false,
                    var: var.clone(),
                },
                alias: "n".into(),
            },
        ];
        ast.order_by = None;
        ast.limit = None;
        let plain = evaluate(&ast, &graph).unwrap();
        ast.projection[1] = Projection::Aggregate {
            agg: Aggregate::Count {
                distinct: true,
                var: var.clone(),
            },
            alias: "n".into(),
        };
        let distinct = evaluate(&ast, &graph).unwrap();
        let count_of = |rs: &mgkb_sparql::ResultSet, key: &Option<Term>| -> usize {
            rs.rows
                .iter()
                .find(|r| &r[0] == key)
                .and_then(|r| r[1].as_ref())
                .and_then(|t| t.as_literal().map(|l| l.lexical().parse().unwrap()))
                .unwrap()
        };
        for row in &plain.rows {
            let n_plain: usize = row[1]
                .as_ref()
                .unwrap()
                .as_literal()
                .unwrap()
                .lexical()
                .parse()
                .unwrap();
            let n_distinct = count_of(&distinct, &row[0]);
            assert!(n_distinct <= n_plain);
        }

        // LIMIT yields a prefix of the unlimited ordered result
        let mut limited = ast.clone();
        limited.limit = Some(2);
        let full = rendered(&evaluate(&ast, &graph).unwrap());
        let cut = rendered(&evaluate(&limited, &graph).unwrap());
        assert_eq!(cut.as_slice(), &full[..full.len().min(2)]);
    }
}
