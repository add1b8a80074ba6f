use mgkb_rdf::Literal;

use crate::ast::{
    Aggregate, Expr, IriRef, OrderBy, Projection, QueryAst, TermPattern, TriplePattern,
};
use crate::{Result, SparqlError};

/// Parse a query in the supported SPARQL subset.
pub fn parse_query(text: &str) -> Result<QueryAst> {
    let tokens = lex(text)?;
    Parser { tokens, pos: 0 }.parse()
}

const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "OPTIONAL",
    "UNION",
    "MINUS",
    "GRAPH",
    "SERVICE",
    "BIND",
    "VALUES",
    "ASK",
    "CONSTRUCT",
    "DESCRIBE",
    "HAVING",
    "OFFSET",
    "EXISTS",
    "NOT",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Iri(String),
    PName(String, String),
    Str(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    Semi,
    Comma,
    OrOr,
    Eq,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    loop {
        while matches!(lx.peek(), Some(c) if c.is_whitespace()) {
            lx.bump();
        }
        if lx.peek() == Some('#') {
            while !matches!(lx.peek(), None | Some('\n')) {
                lx.bump();
            }
            continue;
        }
        let (line, col) = (lx.line, lx.col);
        let Some(c) = lx.peek() else { break };
        let tok = match c {
            '{' => {
                lx.bump();
                Tok::LBrace
            }
            '}' => {
                lx.bump();
                Tok::RBrace
            }
            '(' => {
                lx.bump();
                Tok::LParen
            }
            ')' => {
                lx.bump();
                Tok::RParen
            }
            '.' => {
                lx.bump();
                Tok::Dot
            }
            ';' => {
                lx.bump();
                Tok::Semi
            }
            ',' => {
                lx.bump();
                Tok::Comma
            }
            '=' => {
                lx.bump();
                Tok::Eq
            }
            '|' => {
                lx.bump();
                if lx.peek() == Some('|') {
                    lx.bump();
                    Tok::OrOr
                } else {
                    return Err(SparqlError::Unsupported {
                        construct: "property path '|'".into(),
                        line,
                        column: col,
                    });
                }
            }
            '*' | '/' | '+' | '^' | '!' => {
                return Err(SparqlError::Unsupported {
                    construct: format!("'{c}'"),
                    line,
                    column: col,
                });
            }
            '?' | '$' => {
                lx.bump();
                let mut name = String::new();
                while matches!(lx.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    name.push(lx.bump().unwrap());
                }
                if name.is_empty() {
                    return Err(SparqlError::parse(line, col, "empty variable name"));
                }
                Tok::Var(name)
            }
            '<' => {
                lx.bump();
                let mut iri = String::new();
                loop {
                    match lx.bump() {
                        Some('>') => break,
                        Some(c) if c > ' ' => iri.push(c),
                        _ => return Err(SparqlError::parse(line, col, "unterminated IRI")),
                    }
                }
                Tok::Iri(iri)
            }
            '"' => {
                lx.bump();
                let mut s = String::new();
                loop {
                    match lx.bump() {
                        Some('"') => break,
                        Some('\\') => match lx.bump() {
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            Some('r') => s.push('\r'),
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some(other) => {
                                return Err(SparqlError::parse(
                                    line,
                                    col,
                                    format!("invalid string escape '\\{other}'"),
                                ))
                            }
                            None => {
                                return Err(SparqlError::parse(line, col, "unterminated string"))
                            }
                        },
                        Some(c) => s.push(c),
                        None => return Err(SparqlError::parse(line, col, "unterminated string")),
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
                    n.push(lx.bump().unwrap());
                }
                Tok::Int(n.parse().map_err(|_| {
                    SparqlError::parse(line, col, "integer literal out of range")
                })?)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut word = String::new();
                while matches!(lx.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '-')
                {
                    word.push(lx.bump().unwrap());
                }
                if lx.peek() == Some(':') {
                    lx.bump();
                    let mut local = String::new();
                    while matches!(
                        lx.peek(),
                        Some(c) if c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
                    ) {
                        local.push(lx.bump().unwrap());
                    }
                    // PN_LOCAL cannot end with '.'; give those back as Dot tokens.
                    let mut trailing = 0;
                    while local.ends_with('.') {
                        local.pop();
                        trailing += 1;
                    }
                    tokens.push(Token {
                        tok: Tok::PName(word, local),
                        line,
                        col,
                    });
                    for _ in 0..trailing {
                        tokens.push(Token {
                            tok: Tok::Dot,
                            line,
                            col,
                        });
                    }
                    continue;
                }
                Tok::Word(word)
            }
            other => {
                return Err(SparqlError::parse(
                    line,
                    col,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        tokens.push(Token { tok, line, col });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> SparqlError {
        let (line, col) = self.here();
        SparqlError::parse(line, col, message)
    }

    fn unsupported(&self, construct: impl Into<String>) -> SparqlError {
        let (line, col) = self.here();
        SparqlError::Unsupported {
            construct: construct.into(),
            line,
            column: col,
        }
    }

    /// Peek a bare word in uppercase form (keywords are case-insensitive).
    fn peek_keyword(&self) -> Option<String> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w.to_ascii_uppercase()),
            _ => None,
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_keyword().as_deref() == Some(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("expected {kw}")))
        }
    }

    fn check_unsupported_keyword(&self) -> Result<()> {
        if let Some(kw) = self.peek_keyword() {
            if UNSUPPORTED_KEYWORDS.contains(&kw.as_str()) {
                return Err(self.unsupported(kw));
            }
        }
        Ok(())
    }

    fn parse(mut self) -> Result<QueryAst> {
        let mut prefixes = Vec::new();
        while self.eat_keyword("PREFIX") {
            let (prefix, local) = match self.bump() {
                Some(Tok::PName(p, l)) => (p, l),
                _ => return Err(self.error("expected prefix name after PREFIX")),
            };
            if !local.is_empty() {
                return Err(self.error("prefix declaration must end with ':'"));
            }
            let iri = match self.bump() {
                Some(Tok::Iri(iri)) => iri,
                _ => return Err(self.error("expected IRI in prefix declaration")),
            };
            prefixes.push((prefix, iri));
        }

        self.check_unsupported_keyword()?;
        self.expect_keyword("SELECT")?;
        if self.peek_keyword().as_deref() == Some("DISTINCT") {
            return Err(self.unsupported("SELECT DISTINCT"));
        }

        let mut projection = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Var(_)) => {
                    if let Some(Tok::Var(v)) = self.bump() {
                        projection.push(Projection::Var(v));
                    }
                }
                Some(Tok::LParen) => {
                    self.bump();
                    let agg = self.parse_aggregate()?;
                    self.expect_keyword("AS")?;
                    let alias = match self.bump() {
                        Some(Tok::Var(v)) => v,
                        _ => return Err(self.error("expected alias variable after AS")),
                    };
                    match self.bump() {
                        Some(Tok::RParen) => {}
                        _ => return Err(self.error("expected ')' to close aggregate alias")),
                    }
                    projection.push(Projection::Aggregate { agg, alias });
                }
                _ => break,
            }
        }
        if projection.is_empty() {
            return Err(self.error("SELECT clause projects nothing"));
        }

        self.check_unsupported_keyword()?;
        self.expect_keyword("WHERE")?;
        match self.bump() {
            Some(Tok::LBrace) => {}
            _ => return Err(self.error("expected '{' after WHERE")),
        }

        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        loop {
            self.check_unsupported_keyword()?;
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.bump();
                    break;
                }
                Some(Tok::Word(w)) if w.eq_ignore_ascii_case("FILTER") => {
                    self.bump();
                    match self.bump() {
                        Some(Tok::LParen) => {}
                        _ => return Err(self.error("expected '(' after FILTER")),
                    }
                    let expr = self.parse_expr()?;
                    match self.bump() {
                        Some(Tok::RParen) => {}
                        _ => return Err(self.error("expected ')' to close FILTER")),
                    }
                    filters.push(expr);
                    if self.peek() == Some(&Tok::Dot) {
                        self.bump();
                    }
                }
                Some(_) => {
                    self.parse_triples_same_subject(&mut patterns)?;
                    match self.peek() {
                        Some(Tok::Dot) => {
                            self.bump();
                        }
                        Some(Tok::RBrace) => {}
                        _ => return Err(self.error("expected '.' between triple blocks")),
                    }
                }
                None => return Err(self.error("unterminated group graph pattern")),
            }
        }

        let mut group_by = Vec::new();
        if self.eat_keyword("GROUP") {
            self.expect_keyword("BY")?;
            while let Some(Tok::Var(_)) = self.peek() {
                if let Some(Tok::Var(v)) = self.bump() {
                    group_by.push(v);
                }
            }
            if group_by.is_empty() {
                return Err(self.error("GROUP BY lists no variables"));
            }
        }

        let mut order_by = None;
        if self.eat_keyword("ORDER") {
            self.expect_keyword("BY")?;
            let descending = if self.eat_keyword("DESC") {
                true
            } else {
                !self.eat_keyword("ASC") && false
            };
            let key = if matches!(self.peek(), Some(Tok::LParen)) {
                self.bump();
                let v = match self.bump() {
                    Some(Tok::Var(v)) => v,
                    _ => return Err(self.error("expected variable inside ORDER BY (...)")),
                };
                match self.bump() {
                    Some(Tok::RParen) => v,
                    _ => return Err(self.error("expected ')' in ORDER BY")),
                }
            } else {
                match self.bump() {
                    Some(Tok::Var(v)) => v,
                    _ => return Err(self.error("expected variable in ORDER BY")),
                }
            };
            order_by = Some(OrderBy { key, descending });
        }

        let mut limit = None;
        if self.eat_keyword("LIMIT") {
            limit = match self.bump() {
                Some(Tok::Int(n)) if n >= 0 => Some(n as usize),
                _ => return Err(self.error("expected nonnegative integer after LIMIT")),
            };
        }

        self.check_unsupported_keyword()?;
        if self.pos != self.tokens.len() {
            return Err(self.error("unexpected trailing tokens"));
        }

        let ast = QueryAst {
            prefixes,
            projection,
            patterns,
            filters,
            group_by,
            order_by,
            limit,
        };
        validate(&ast)?;
        Ok(ast)
    }

    fn parse_aggregate(&mut self) -> Result<Aggregate> {
        if !self.eat_keyword("COUNT") {
            return Err(self.error("expected COUNT aggregate"));
        }
        match self.bump() {
            Some(Tok::LParen) => {}
            _ => return Err(self.error("expected '(' after COUNT")),
        }
        let distinct = self.eat_keyword("DISTINCT");
        let var = match self.bump() {
            Some(Tok::Var(v)) => v,
            _ => return Err(self.error("expected variable inside COUNT")),
        };
        match self.bump() {
            Some(Tok::RParen) => {}
            _ => return Err(self.error("expected ')' to close COUNT")),
        }
        Ok(Aggregate::Count { distinct, var })
    }

    fn parse_triples_same_subject(&mut self, patterns: &mut Vec<TriplePattern>) -> Result<()> {
        let subject = self.parse_term_pattern(false)?;
        loop {
            let predicate = self.parse_predicate()?;
            let object = self.parse_term_pattern(true)?;
            patterns.push(TriplePattern {
                subject: subject.clone(),
                predicate,
                object,
            });
            if self.peek() == Some(&Tok::Semi) {
                self.bump();
                // a dangling ';' before '.' or '}' is tolerated
                if matches!(self.peek(), Some(Tok::Dot) | Some(Tok::RBrace)) {
                    break;
                }
                continue;
            }
            break;
        }
        Ok(())
    }

    fn parse_predicate(&mut self) -> Result<TermPattern> {
        if let Some(Tok::Word(w)) = self.peek() {
            if w == "a" {
                self.bump();
                return Ok(TermPattern::Iri(IriRef::Full(
                    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type".into(),
                )));
            }
        }
        self.parse_term_pattern(false)
    }

    fn parse_term_pattern(&mut self, allow_literal: bool) -> Result<TermPattern> {
        self.check_unsupported_keyword()?;
        match self.bump() {
            Some(Tok::Var(v)) => Ok(TermPattern::Var(v)),
            Some(Tok::Iri(iri)) => Ok(TermPattern::Iri(IriRef::Full(iri))),
            Some(Tok::PName(p, l)) => Ok(TermPattern::Iri(IriRef::Prefixed {
                prefix: p,
                local: l,
            })),
            Some(Tok::Str(s)) if allow_literal => Ok(TermPattern::Literal(Literal::plain(s))),
            Some(Tok::Int(n)) if allow_literal => Ok(TermPattern::Literal(Literal::typed(
                n.to_string(),
                mgkb_rdf::Iri::new(mgkb_rdf::xsd::INTEGER).unwrap(),
            ))),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected term"))
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut left = self.parse_eq_expr()?;
        while self.peek() == Some(&Tok::OrOr) {
            self.bump();
            let right = self.parse_eq_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_eq_expr(&mut self) -> Result<Expr> {
        let left = self.parse_primary()?;
        if self.peek() == Some(&Tok::Eq) {
            self.bump();
            let right = self.parse_primary()?;
            return Ok(Expr::Eq(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn parse_primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let e = self.parse_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(Tok::Word(w)) => {
                let upper = w.to_ascii_uppercase();
                match upper.as_str() {
                    "REGEX" => {
                        self.bump();
                        self.expect_lparen()?;
                        let text = self.parse_expr()?;
                        self.expect_comma()?;
                        let pattern = self.expect_string()?;
                        let flags = if self.peek() == Some(&Tok::Comma) {
                            self.bump();
                            self.expect_string()?
                        } else {
                            String::new()
                        };
                        for f in flags.chars() {
                            if f != 'i' {
                                return Err(self.unsupported(format!("regex flag '{f}'")));
                            }
                        }
                        match self.bump() {
                            Some(Tok::RParen) => {}
                            _ => return Err(self.error("expected ')' to close regex")),
                        }
                        Ok(Expr::Regex {
                            text: Box::new(text),
                            pattern,
                            flags,
                        })
                    }
                    "LCASE" => {
                        self.bump();
                        self.expect_lparen()?;
                        let e = self.parse_expr()?;
                        match self.bump() {
                            Some(Tok::RParen) => Ok(Expr::Lcase(Box::new(e))),
                            _ => Err(self.error("expected ')' to close lcase")),
                        }
                    }
                    "STR" => {
                        self.bump();
                        self.expect_lparen()?;
                        let e = self.parse_expr()?;
                        match self.bump() {
                            Some(Tok::RParen) => Ok(Expr::Str(Box::new(e))),
                            _ => Err(self.error("expected ')' to close str")),
                        }
                    }
                    _ if UNSUPPORTED_KEYWORDS.contains(&upper.as_str()) => {
                        Err(self.unsupported(upper))
                    }
                    _ => Err(self.unsupported(format!("function `{w}`"))),
                }
            }
            Some(Tok::Var(_)) => match self.bump() {
                Some(Tok::Var(v)) => Ok(Expr::Var(v)),
                _ => unreachable!(),
            },
            Some(Tok::Str(_)) => match self.bump() {
                Some(Tok::Str(s)) => Ok(Expr::Literal(Literal::plain(s))),
                _ => unreachable!(),
            },
            Some(Tok::Int(_)) => match self.bump() {
                Some(Tok::Int(n)) => Ok(Expr::Literal(Literal::typed(
                    n.to_string(),
                    mgkb_rdf::Iri::new(mgkb_rdf::xsd::INTEGER).unwrap(),
                ))),
                _ => unreachable!(),
            },
            Some(Tok::Iri(_)) => match self.bump() {
                Some(Tok::Iri(iri)) => Ok(Expr::Iri(IriRef::Full(iri))),
                _ => unreachable!(),
            },
            Some(Tok::PName(_, _)) => match self.bump() {
                Some(Tok::PName(p, l)) => Ok(Expr::Iri(IriRef::Prefixed {
                    prefix: p,
                    local: l,
                })),
                _ => unreachable!(),
            },
            _ => Err(self.error("expected expression")),
        }
    }

    fn expect_lparen(&mut self) -> Result<()> {
        match self.bump() {
            Some(Tok::LParen) => Ok(()),
            _ => Err(self.error("expected '('")),
        }
    }

    fn expect_comma(&mut self) -> Result<()> {
        match self.bump() {
            Some(Tok::Comma) => Ok(()),
            _ => Err(self.error("expected ','")),
        }
    }

    fn expect_string(&mut self) -> Result<String> {
        match self.bump() {
            Some(Tok::Str(s)) => Ok(s),
            _ => Err(self.error("expected string literal")),
        }
    }
}

/// Structural checks that do not need the graph.
fn validate(ast: &QueryAst) -> Result<()> {
    if ast.has_aggregates() {
        for p in &ast.projection {
            if let Projection::Var(v) = p {
                if !ast.group_by.contains(v) {
                    return Err(SparqlError::parse(
                        1,
                        1,
                        format!("projected variable ?{v} must appear in GROUP BY"),
                    ));
                }
            }
        }
    }
    Ok(())
}
