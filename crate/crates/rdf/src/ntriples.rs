use std::io::Write;

use crate::{BlankNode, Graph, Iri, Literal, RdfError, Result, Term, Triple};

/// Serialize a graph as canonical N-Triples.
///
/// One triple per line, UTF-8, lines sorted lexicographically by their
/// serialized form, each terminated with ` .\n`. Output is byte-identical
/// for equal graphs.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph.iter().map(|t| format!("{t}\n")).collect();
    lines.sort_unstable();
    lines.concat()
}

/// Write canonical N-Triples to any sink.
pub fn write_ntriples<W: Write>(graph: &Graph, mut writer: W) -> std::io::Result<()> {
    writer.write_all(serialize_ntriples(graph).as_bytes())
}

/// Parse N-Triples text into a graph.
///
/// Blank lines and `#` comments (full-line or after the terminating dot)
/// are tolerated. Errors carry a 1-based line and column.
pub fn parse_ntriples(input: &str) -> Result<Graph> {
    let mut graph = Graph::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let mut scanner = Scanner::new(line, line_no);
        scanner.skip_ws();
        if scanner.at_end() || scanner.peek() == Some('#') {
            continue;
        }
        let subject = scanner.parse_subject()?;
        scanner.require_ws()?;
        scanner.skip_ws();
        let predicate = scanner.parse_iri()?;
        scanner.require_ws()?;
        scanner.skip_ws();
        let object = scanner.parse_term()?;
        scanner.skip_ws();
        scanner.expect('.')?;
        scanner.skip_ws();
        if !scanner.at_end() && scanner.peek() != Some('#') {
            return Err(scanner.error("unexpected trailing content after '.'"));
        }
        graph.insert(Triple::new(subject, predicate, object)?);
    }
    Ok(graph)
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Scanner {
    fn new(line: &str, line_no: usize) -> Self {
        Scanner {
            chars: line.chars().collect(),
            pos: 0,
            line: line_no,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ') | Some('\t')) {
            self.pos += 1;
        }
    }

    fn require_ws(&mut self) -> Result<()> {
        if matches!(self.peek(), Some(' ') | Some('\t')) {
            Ok(())
        } else {
            Err(self.error("expected whitespace"))
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, message: impl Into<String>) -> RdfError {
        RdfError::parse(self.line, self.pos + 1, message)
    }

    fn parse_subject(&mut self) -> Result<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri()?)),
            Some('_') => Ok(Term::Blank(self.parse_blank()?)),
            _ => Err(self.error("expected IRI or blank node subject")),
        }
    }

    fn parse_term(&mut self) -> Result<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri()?)),
            Some('_') => Ok(Term::Blank(self.parse_blank()?)),
            Some('"') => Ok(Term::Literal(self.parse_literal()?)),
            _ => Err(self.error("expected IRI, blank node, or literal")),
        }
    }

    fn parse_iri(&mut self) -> Result<Iri> {
        self.expect('<')?;
        let start = self.pos;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => {
                    let c = self.parse_unicode_escape()?;
                    value.push(c);
                }
                Some(c) => value.push(c),
                None => {
                    return Err(RdfError::parse(self.line, start, "unterminated IRI"));
                }
            }
        }
        Iri::new(value).map_err(|e| self.error(e.to_string()))
    }

    fn parse_blank(&mut self) -> Result<BlankNode> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' {
                label.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        BlankNode::new(label).map_err(|e| self.error(e.to_string()))
    }

    fn parse_literal(&mut self) -> Result<Literal> {
        self.expect('"')?;
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let c = self.parse_string_escape()?;
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
                None => return Err(self.error("unterminated string literal")),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Literal::lang_tagged(lexical, tag).map_err(|e| self.error(e.to_string()))
            }
            Some('^') => {
                self.expect('^')?;
                self.expect('^')?;
                let dt = self.parse_iri()?;
                Ok(Literal::typed(lexical, dt))
            }
            _ => Ok(Literal::plain(lexical)),
        }
    }

    fn parse_string_escape(&mut self) -> Result<char> {
        match self.bump() {
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{8}'),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('f') => Ok('\u{c}'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            Some('\\') => Ok('\\'),
            Some('u') => self.parse_hex(4),
            Some('U') => self.parse_hex(8),
            Some(c) => Err(self.error(format!("invalid escape '\\{c}'"))),
            None => Err(self.error("dangling escape at end of line")),
        }
    }

    /// After a backslash inside an IRI only \u / \U escapes are legal.
    fn parse_unicode_escape(&mut self) -> Result<char> {
        match self.bump() {
            Some('u') => self.parse_hex(4),
            Some('U') => self.parse_hex(8),
            _ => Err(self.error("invalid escape in IRI")),
        }
    }

    fn parse_hex(&mut self, digits: usize) -> Result<char> {
        let mut value: u32 = 0;
        for _ in 0..digits {
            let c = self
                .bump()
                .ok_or_else(|| self.error("truncated unicode escape"))?;
            let d = c
                .to_digit(16)
                .ok_or_else(|| self.error("invalid hex digit in unicode escape"))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.error("escape is not a valid code point"))
    }
}
