//! Expression literals: graph-side sums of bar words `a|b|c` and graph
//! literals `G[3; 1->2, 2->3](a,b,c)`, tree-side sums of brackets `[[a,b],c]`
//! and products `(a*b)*c`, all with rational coefficients.

use liecograph::graphcoalg::{BarWord, GraphElement};
use liecograph::labels::{GeneratorTable, Label, LabelError};
use liecograph::liealg::{TreeElement, TreeTerm};
use liecograph::rational::Rational;
use liecograph::shapes::validate_graph;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown generator `{name}`")]
    UnknownGenerator { column: usize, name: String },
    #[error("column {column}: graph has {vertices} vertices but {labels} labels")]
    ArityMismatch { column: usize, vertices: usize, labels: usize },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    table: &'a GeneratorTable,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, table: &'a GeneratorTable) -> Self {
        Cursor { text, pos: 0, table }
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.column(), message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest.find(|c: char| !keep(c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        match digits.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.fail("expected a number"),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        self.skip_ws();
        let column = self.column();
        let name = self.take_while(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(ParseError::Syntax { column, message: "expected a generator name".into() });
        }
        self.table.get(name).map_err(|e| match e {
            LabelError::UnknownGenerator(name) => ParseError::UnknownGenerator { column, name },
            other => ParseError::Syntax { column, message: other.to_string() },
        })
    }

    /// An optional rational coefficient, followed by an optional `*`.
    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Rational::one());
        }
        let text = self.take_while(|c| c.is_ascii_digit() || c == '/');
        let Ok(c) = text.parse::<Rational>() else {
            return self.fail(format!("bad coefficient `{text}`"));
        };
        self.eat('*');
        Ok(c)
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return self.fail("unexpected trailing input");
        }
        Ok(())
    }

    /// `±c₁ x₁ ± c₂ x₂ …`, or a bare `0`.
    fn sum<T>(&mut self, zero: T, mut atom: impl FnMut(&mut Self) -> Result<T, ParseError>, add: impl Fn(&T, &T, &Rational) -> T) -> Result<T, ParseError> {
        let save = self.pos;
        if self.eat('0') && self.peek().is_none() {
            return Ok(zero);
        }
        self.pos = save;
        let mut acc = zero;
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let c = self.coefficient()?;
            let x = atom(self)?;
            acc = add(&acc, &x, &if negative { -c } else { c });
            if self.peek().is_none() {
                break;
            }
            if !matches!(self.peek(), Some('+' | '-')) {
                return self.fail("expected `+` or `-`");
            }
        }
        Ok(acc)
    }

    fn graph_atom(&mut self) -> Result<GraphElement, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with("G[") {
            let column = self.column();
            self.eat_str("G[");
            let n = self.number()?;
            self.expect(';')?;
            let mut edges = Vec::new();
            while self.peek() != Some(']') {
                if !edges.is_empty() {
                    self.expect(',')?;
                }
                let a = self.number()?;
                if !self.eat_str("->") {
                    return self.fail("expected `->`");
                }
                let b = self.number()?;
                if a == 0 || b == 0 {
                    return self.fail("vertices are numbered from 1");
                }
                edges.push((a - 1, b - 1));
            }
            self.expect(']')?;
            self.expect('(')?;
            let mut labels = vec![self.label()?];
            while self.eat(',') {
                labels.push(self.label()?);
            }
            self.expect(')')?;
            if labels.len() != n {
                return Err(ParseError::ArityMismatch { column, vertices: n, labels: labels.len() });
            }
            let graph = validate_graph(n, &edges).map_err(|e| ParseError::Syntax { column, message: e.to_string() })?;
            return GraphElement::from_graph(&graph, &labels, Rational::one())
                .map_err(|e| ParseError::Syntax { column, message: e.to_string() });
        }
        let mut word = vec![self.label()?];
        while self.eat('|') {
            word.push(self.label()?);
        }
        Ok(BarWord(word).to_element())
    }

    /// `x*y*…`, grafting left to right.
    fn tree_product(&mut self) -> Result<TreeTerm, ParseError> {
        let mut t = self.tree_primary()?;
        while self.eat('*') {
            t = TreeTerm::graft(&t, &self.tree_primary()?);
        }
        Ok(t)
    }

    fn tree_primary(&mut self) -> Result<TreeTerm, ParseError> {
        if self.eat('[') {
            let l = self.tree_product()?;
            self.expect(',')?;
            let r = self.tree_product()?;
            self.expect(']')?;
            Ok(TreeTerm::graft(&l, &r))
        } else if self.eat('(') {
            let t = self.tree_product()?;
            self.expect(')')?;
            Ok(t)
        } else {
            Ok(TreeTerm::leaf(self.label()?))
        }
    }
}

/// Parses a graph-side expression over the generators of `table`.
pub fn parse_graph(text: &str, table: &GeneratorTable) -> Result<GraphElement, ParseError> {
    let mut cur = Cursor::new(text, table);
    let g = cur.sum(GraphElement::zero(), |c| c.graph_atom(), |acc, x, k| acc + &x.scaled(k))?;
    cur.end()?;
    Ok(g)
}

/// Parses a tree-side expression over the generators of `table`.
pub fn parse_tree(text: &str, table: &GeneratorTable) -> Result<TreeElement, ParseError> {
    let mut cur = Cursor::new(text, table);
    let t = cur.sum(
        TreeElement::zero(),
        |c| c.tree_product().map(|t| TreeElement::from_term(t, Rational::one())),
        |acc, x, k| acc + &x.scaled(k),
    )?;
    cur.end()?;
    Ok(t)
}

/// Comma-separated generator names, as used by `enumerate`.
pub fn parse_labels(text: &str, table: &GeneratorTable) -> Result<Vec<Label>, ParseError> {
    let mut cur = Cursor::new(text, table);
    let mut out = vec![cur.label()?];
    while cur.eat(',') {
        out.push(cur.label()?);
    }
    cur.end()?;
    Ok(out)
}

/// Names that look like generators, in order of first appearance.
pub fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_alphabetic() || c == '_' {
            let mut end = i + c.len_utf8();
            while let Some((j, d)) = chars.peek() {
                if d.is_alphanumeric() || *d == '_' || *d == '\'' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let name = &text[i..end];
            // the `G` of a graph literal is not a generator
            let literal = name == "G" && text[end..].starts_with('[');
            if !literal && !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        } else if c.is_ascii_digit() {
            while chars.peek().is_some_and(|(_, d)| d.is_ascii_digit()) {
                chars.next();
            }
        }
    }
    out
}

#[cfg(test)]
fn display_tree(t: &TreeElement, table: &GeneratorTable) -> String {
    liecograph::graphcoalg::display_terms(t.terms().map(|(x, c)| (x.to_bracket_string(table), c.clone())))
}
