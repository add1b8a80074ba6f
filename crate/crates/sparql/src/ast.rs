use mgkb_rdf::Literal;

/// An IRI as written in the query: either wrapped in `<...>` or prefixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IriRef {
    Full(String),
    Prefixed { prefix: String, local: String },
}

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq)]
pub enum TermPattern {
    Var(String),
    Iri(IriRef),
    Literal(Literal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: TermPattern,
    pub object: TermPattern,
}

/// Filter expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Or(Box<Expr>, Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Regex {
        text: Box<Expr>,
        pattern: String,
        flags: String,
    },
    Lcase(Box<Expr>),
    Str(Box<Expr>),
    Var(String),
    Literal(Literal),
    Iri(IriRef),
}

impl Expr {
    /// Number of leaves in the `||` disjunction spine.
    pub fn disjunct_count(&self) -> usize {
        match self {
            Expr::Or(a, b) => a.disjunct_count() + b.disjunct_count(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Aggregate {
    Count { distinct: bool, var: String },
}

/// One item of the SELECT clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Var(String),
    Aggregate { agg: Aggregate, alias: String },
}

impl Projection {
    /// The output column name.
    pub fn name(&self) -> &str {
        match self {
            Projection::Var(v) => v,
            Projection::Aggregate { alias, .. } => alias,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBy {
    pub key: String,
    pub descending: bool,
}

/// A parsed query in the supported subset.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryAst {
    pub prefixes: Vec<(String, String)>,
    pub projection: Vec<Projection>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<Expr>,
    pub group_by: Vec<String>,
    pub order_by: Option<OrderBy>,
    pub limit: Option<usize>,
}

impl QueryAst {
    pub fn has_aggregates(&self) -> bool {
        self.projection
            .iter()
            .any(|p| matches!(p, Projection::Aggregate { .. }))
    }
}
