//! Line-oriented text formats for presentations.
//!
//! Algebras:
//!
//! ```text
//! # Sullivan model of S²
//! gen x deg 2
//! gen y deg 3
//! diff y = x^2
//! cap weight 8 degree 8
//! ```
//!
//! with `rel <name>^<k> = 0` for monomial relations. Coalgebras use
//! `cogen <name> deg <k>`, `coprod <name> = <coef> <a>⊗<b> + …` (`(x)` may
//! stand for `⊗`) and `diff <name> = <coef> <b> + …`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use super::{Cogenerator, DgcaPresentation, DgccPresentation, FunctorError, Generator, Polynomial, Truncation};
use crate::lincomb::LinComb;
use crate::rational::{one, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] FunctorError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, column, message: message.into() }
}

/// A non-empty, comment-stripped line with its 1-based number.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn all(text: &'a str) -> impl Iterator<Item = Line<'a>> {
        text.lines().enumerate().filter_map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("");
            (!body.trim().is_empty()).then_some(Line { number: i + 1, text: body })
        })
    }

    fn words(&self) -> Vec<&'a str> {
        self.text.split_whitespace().collect()
    }

    /// Column (1-based) of a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    /// The text after the first `=`.
    fn rhs(&self) -> Result<&'a str, FormatError> {
        self.text
            .split_once('=')
            .map(|(_, r)| r)
            .ok_or_else(|| syntax(self.number, 1, "expected `=`"))
    }
}

fn parse_number<T: FromStr>(line: &Line, word: &str, what: &str) -> Result<T, FormatError> {
    word.parse().map_err(|_| syntax(line.number, line.column_of(word), format!("expected {what}, found `{word}`")))
}

/// `cap weight <n> degree <d>`
fn parse_cap(line: &Line) -> Result<Truncation, FormatError> {
    match line.words()[..] {
        ["cap", "weight", w, "degree", d] => {
            Ok(Truncation::new(parse_number(line, w, "a weight")?, parse_number(line, d, "a degree")?))
        }
        _ => Err(syntax(line.number, 1, "expected `cap weight <n> degree <d>`")),
    }
}

/// `<kw> <name> deg <k>`
fn parse_declaration<'a>(line: &Line<'a>) -> Result<(&'a str, i32), FormatError> {
    match line.words()[..] {
        [_, name, "deg", k] => Ok((name, parse_number(line, k, "a degree")?)),
        _ => Err(syntax(line.number, 1, "expected `<keyword> <name> deg <k>`")),
    }
}

/// Splits a sum into signed terms, each with its byte offset in `text`.
fn signed_terms(text: &str) -> Vec<(bool, usize, &str)> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == '+' || ch == '-' {
            let part = &text[start..i];
            if !part.trim().is_empty() {
                out.push((negative, start, part));
                negative = false;
            }
            if ch == '-' {
                negative = !negative;
            }
            start = i + 1;
        }
    }
    out.push((negative, start, &text[start..]));
    out
}

/// Strips a leading rational coefficient, with an optional `*` after it.
fn split_coefficient(term: &str) -> Result<(Rational, &str), String> {
    let t = term.trim_start();
    let end = t.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(t.len());
    if end == 0 {
        return Ok((one(), t));
    }
    let c = Rational::from_str(&t[..end]).map_err(|_| format!("bad coefficient `{}`", &t[..end]))?;
    let rest = t[end..].trim_start();
    Ok((c, rest.strip_prefix('*').unwrap_or(rest)))
}

fn polynomial_at(a: &DgcaPresentation, text: &str, line: usize, offset: usize) -> Result<Polynomial, FormatError> {
    let mut out = Polynomial::new();
    for (negative, start, term) in signed_terms(text) {
        let col = offset + start + (term.len() - term.trim_start().len()) + 1;
        if term.trim().is_empty() {
            return Err(syntax(line, col, "empty term"));
        }
        let (c, rest) = split_coefficient(term).map_err(|m| syntax(line, col, m))?;
        let mut p = a.unit_polynomial();
        let rest = rest.trim();
        if !rest.is_empty() && rest != "1" {
            for factor in rest.split('*') {
                let factor = factor.trim();
                let (name, power) = match factor.split_once('^') {
                    Some((n, k)) => (n.trim(), k.trim().parse::<u32>().map_err(|_| syntax(line, col, "bad exponent"))?),
                    None => (factor, 1),
                };
                let i = a.index_of(name).map_err(|_| syntax(line, col, format!("unknown generator `{name}`")))?;
                for _ in 0..power {
                    p = a.mul(&p, &a.generator_polynomial(i));
                }
            }
        }
        out += &p.scaled(&if negative { -c } else { c });
    }
    Ok(out)
}

/// Parses a polynomial in the generators of `a`, such as `x^2 - 1/2*x*y`.
pub fn parse_polynomial(a: &DgcaPresentation, text: &str) -> Result<Polynomial, FormatError> {
    polynomial_at(a, text, 1, 0)
}

/// Parses an algebra presentation. Without a `cap` line the default
/// truncation applies.
pub fn parse_dgca(text: &str) -> Result<DgcaPresentation, FormatError> {
    let mut generators = Vec::new();
    let mut truncation = Truncation::DEFAULT;
    let mut later = Vec::new();
    for line in Line::all(text) {
        match line.words()[0] {
            "gen" => {
                let (name, degree) = parse_declaration(&line)?;
                generators.push(Generator { name: name.to_string(), degree });
            }
            "cap" => truncation = parse_cap(&line)?,
            "rel" | "diff" => later.push(line),
            other => return Err(syntax(line.number, line.column_of(other), format!("unknown keyword `{other}`"))),
        }
    }
    let mut a = DgcaPresentation::bare(generators, truncation)?;
    // relations first, so that differentials are read in the quotient
    later.sort_by_key(|l| l.words()[0] == "diff");
    for line in later {
        let words = line.words();
        if words[0] == "rel" {
            let bad = || syntax(line.number, 1, "expected `rel <name>^<k> = 0`");
            let lhs = line.text.split_once('=').ok_or_else(bad)?.0;
            let (name, k) = lhs.trim().strip_prefix("rel").ok_or_else(bad)?.split_once('^').ok_or_else(bad)?;
            if line.rhs()?.trim() != "0" {
                return Err(bad());
            }
            a.set_relation(name.trim(), parse_number(&line, k.trim(), "a power")?)?;
        } else {
            let name = words.get(1).copied().ok_or_else(|| syntax(line.number, 1, "expected a generator"))?;
            let rhs = line.rhs()?;
            let p = polynomial_at(&a, rhs, line.number, line.column_of(rhs) - 1)?;
            a.set_differential(name, p)?;
        }
    }
    a.validate()?;
    Ok(a)
}

/// Parses a coalgebra presentation together with its `cap` line.
pub fn parse_dgcc(text: &str) -> Result<(DgccPresentation, Truncation), FormatError> {
    let mut basis = Vec::new();
    let mut truncation = Truncation::DEFAULT;
    let mut later = Vec::new();
    for line in Line::all(text) {
        match line.words()[0] {
            "cogen" => {
                let (name, degree) = parse_declaration(&line)?;
                basis.push(Cogenerator { name: name.to_string(), degree });
            }
            "cap" => truncation = parse_cap(&line)?,
            "coprod" | "diff" => later.push(line),
            other => return Err(syntax(line.number, line.column_of(other), format!("unknown keyword `{other}`"))),
        }
    }
    let index: BTreeMap<&str, usize> = basis.iter().enumerate().map(|(i, b)| (b.name.as_str(), i)).collect();
    let mut coproduct = alloc::vec![LinComb::new(); basis.len()];
    let mut differential = alloc::vec![LinComb::new(); basis.len()];
    for line in later {
        let words = line.words();
        let name = words.get(1).copied().unwrap_or("");
        let target = *index
            .get(name)
            .ok_or_else(|| syntax(line.number, 1, format!("unknown basis element `{name}`")))?;
        let rhs = line.rhs()?;
        let lookup = |n: &str, col: usize| {
            index.get(n.trim()).copied().ok_or_else(|| syntax(line.number, col, format!("unknown basis element `{}`", n.trim())))
        };
        for (negative, start, term) in signed_terms(rhs) {
            let col = line.column_of(rhs) + start + (term.len() - term.trim_start().len());
            if term.trim() == "0" {
                continue;
            }
            let (c, rest) = split_coefficient(term).map_err(|m| syntax(line.number, col, m))?;
            let c = if negative { -c } else { c };
            if words[0] == "coprod" {
                let rest = rest.replace("(x)", "⊗");
                let (l, r) = rest.split_once('⊗').ok_or_else(|| syntax(line.number, col, "expected `a⊗b`"))?;
                coproduct[target].add_term((lookup(l, col)?, lookup(r, col)?), c);
            } else {
                differential[target].add_term(lookup(rest, col)?, c);
            }
        }
    }
    Ok((DgccPresentation::new(basis, coproduct, differential)?, truncation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::Monomial;
    use crate::rational::frac;

    #[test]
    fn sullivan_sphere() {
        let a = parse_dgca("# S²\ngen x deg 2\ngen y deg 3\ndiff y = x^2\ncap weight 4 degree 6\n").unwrap();
        assert_eq!(a.truncation(), Truncation::new(4, 6));
        let dy = a.differential_of(1);
        assert_eq!(dy.coefficient(&Monomial::from_exponents(alloc::vec![2, 0])), one());
    }

    #[test]
    fn polynomial_signs_and_coefficients() {
        let a = parse_dgca("gen x deg 2\ngen y deg 3\ngen z deg 3").unwrap();
        let p = parse_polynomial(&a, "z*y - 1/2 x^2 + 3*x*x").unwrap();
        // z·y = −y·z for odd y, z
        assert_eq!(p.coefficient(&Monomial::from_exponents(alloc::vec![0, 1, 1])), -one());
        assert_eq!(p.coefficient(&Monomial::from_exponents(alloc::vec![2, 0, 0])), frac(5, 2));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_dgca("gen x deg 2\ndiff x = q") {
            Err(FormatError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 10)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_dgca("gen x deg two"), Err(FormatError::Syntax { line: 1, column: 11, .. })));
        assert!(matches!(parse_dgca("gen x deg 2\ngen y deg 4\ndiff x = y"), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn coalgebra_with_product_names() {
        let text = "cogen x deg 2\ncogen x^2 deg 4\ncoprod x^2 = x⊗x\ncap weight 3 degree 6\n";
        let (c, t) = parse_dgcc(text).unwrap();
        assert_eq!(t, Truncation::new(3, 6));
        assert_eq!(c.coproduct_of(1).coefficient(&(0, 0)), one());
        let (d, _) = parse_dgcc("cogen x deg 2\ncogen x^2 deg 4\ncoprod x^2 = 1 x (x) x").unwrap();
        assert_eq!(c, d);
    }
}
