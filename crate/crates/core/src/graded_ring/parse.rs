//! Parser for the presentation DSL and for polynomial expressions.
//!
//! A presentation is a sequence of `key: value` entries separated by newlines
//! or by ` / `:
//!
//! ```text
//! generators: u:2, v:2
//! relations: u^2+u*v, v^2
//! orientation: u*v
//! top_degree: 4        # optional
//! ```
//!
//! Polynomials use `+ - * ^`, integer literals and parentheses. Expressions
//! evaluated against an existing ring may also divide by an integer literal.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Rational;

use super::error::RingError;
use super::monomial::Monomial;
use super::presentation::{Generator, RingPresentation};
use super::rewrite::{add_scaled, Terms};

const MAX_EXPONENT: u32 = 1024;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, line: usize, column: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Something an [`Expr`] can be evaluated into.
pub(crate) trait Evaluator {
    type Value: Clone;
    fn constant(&self, q: Rational) -> Self::Value;
    fn variable(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, a: &Self::Value, q: &Rational) -> Self::Value;
}

impl Expr {
    pub(crate) fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value, RingError> {
        Ok(match self {
            Expr::Int(n) => ev.constant(Rational::from_integer(n.clone())),
            Expr::Var { name, line, column } => ev.variable(name).ok_or_else(|| RingError::Syntax {
                line: *line,
                column: *column,
                message: format!("unknown generator `{name}`"),
            })?,
            Expr::Add(a, b) => ev.add(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Sub(a, b) => {
                let minus_one = -Rational::one();
                ev.add(&a.eval(ev)?, &ev.scale(&b.eval(ev)?, &minus_one))
            }
            Expr::Mul(a, b) => ev.mul(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Div(a, n) => ev.scale(&a.eval(ev)?, &Rational::new(BigInt::one(), n.clone())),
            Expr::Neg(a) => ev.scale(&a.eval(ev)?, &-Rational::one()),
            Expr::Pow(a, n) => {
                let base = a.eval(ev)?;
                let mut acc = ev.constant(Rational::one());
                let mut square = base;
                let mut n = *n;
                while n > 0 {
                    if n & 1 == 1 {
                        acc = ev.mul(&acc, &square);
                    }
                    n >>= 1;
                    if n > 0 {
                        square = ev.mul(&square, &square);
                    }
                }
                acc
            }
        })
    }
}

/// Evaluates into unreduced polynomials over a list of generator names.
pub(crate) struct FreeEvaluator<'a> {
    pub names: &'a [String],
}

impl Evaluator for FreeEvaluator<'_> {
    type Value = Terms<Rational>;

    fn constant(&self, q: Rational) -> Self::Value {
        let mut t = BTreeMap::new();
        if !q.is_zero() {
            t.insert(Monomial::one(self.names.len()), q);
        }
        t
    }
    fn variable(&self, name: &str) -> Option<Self::Value> {
        let i = self.names.iter().position(|n| n == name)?;
        Some(BTreeMap::from([(Monomial::generator(self.names.len(), i), Rational::one())]))
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        let mut out = a.clone();
        add_scaled(&mut out, b, &Rational::one());
        out
    }
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        let mut out = BTreeMap::new();
        for (ma, ca) in a {
            let term = b.iter().map(|(mb, cb)| (ma.mul(mb), cb.clone())).collect();
            add_scaled(&mut out, &term, ca);
        }
        out
    }
    fn scale(&self, a: &Self::Value, q: &Rational) -> Self::Value {
        let mut out = BTreeMap::new();
        add_scaled(&mut out, a, q);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    column: usize,
}

fn lex(text: &str, line: usize, column0: usize) -> Result<Vec<Lexed>, RingError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = column0 + i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().expect("digits parse as an integer");
            out.push(Lexed { tok: Tok::Int(n), column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || is_combining_mark(chars[i]))
            {
                i += 1;
            }
            out.push(Lexed { tok: Tok::Ident(chars[start..i].iter().collect()), column });
        } else {
            return Err(RingError::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

// Lets names like `ū` written with a combining macron through.
fn is_combining_mark(c: char) -> bool {
    ('\u{300}'..='\u{36f}').contains(&c)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |l| l.column)
    }

    fn error(&self, message: impl Into<String>) -> RingError {
        RingError::Syntax { line: self.line, column: self.column(), message: message.into() }
    }

    fn expr(&mut self) -> Result<Expr, RingError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, RingError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(n)) if !n.is_zero() => {
                            self.pos += 1;
                            lhs = Expr::Div(Box::new(lhs), n);
                        }
                        _ => return Err(self.error("expected a nonzero integer divisor")),
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, RingError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, RingError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let exp = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.error(format!("exponent must be at most {MAX_EXPONENT}")))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(self.error("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, RingError> {
        let line = self.line;
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var { name, line, column })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a number, a generator or `(`")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parse a polynomial expression located at `line`, starting at `column`
/// (both 1-based).
pub fn parse_expr_at(text: &str, line: usize, column: usize) -> Result<Expr, RingError> {
    let toks = lex(text, line, column)?;
    let end_column = column + text.chars().count();
    let mut parser = Parser { toks, pos: 0, line, end_column };
    let expr = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

pub fn parse_expr(text: &str) -> Result<Expr, RingError> {
    parse_expr_at(text, 1, 1)
}

/// A slice of the source with its 1-based position.
#[derive(Clone, Debug)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn trim(&self) -> Span<'a> {
        let leading = self.text.len() - self.text.trim_start().len();
        Span {
            text: self.text.trim(),
            line: self.line,
            column: self.column + self.text[..leading].chars().count(),
        }
    }

    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut column = self.column;
        let mut piece_column = column;
        for (i, c) in self.text.char_indices() {
            if c == sep {
                out.push(Span { text: &self.text[start..i], line: self.line, column: piece_column });
                start = i + c.len_utf8();
                piece_column = column + 1;
            }
            column += 1;
        }
        out.push(Span { text: &self.text[start..], line: self.line, column: piece_column });
        out
    }

    fn split_once(&self, sep: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(sep)?;
        let head = &self.text[..i];
        Some((
            Span { text: head, line: self.line, column: self.column },
            Span {
                text: &self.text[i + sep.len_utf8()..],
                line: self.line,
                column: self.column + head.chars().count() + 1,
            },
        ))
    }

    fn error(&self, message: impl Into<String>) -> RingError {
        RingError::Syntax { line: self.line, column: self.column, message: message.into() }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || is_combining_mark(c))
}

/// Parse and validate a ring presentation.
pub fn parse_presentation(text: &str) -> Result<RingPresentation, RingError> {
    let mut generators: Option<Span> = None;
    let mut relations: Option<Span> = None;
    let mut orientation: Option<Span> = None;
    let mut top_degree: Option<Span> = None;

    for (line_index, raw_line) in text.lines().enumerate() {
        let line = Span { text: raw_line, line: line_index + 1, column: 1 };
        let line = match line.split_once('#') {
            Some((code, _)) => code,
            None => line,
        };
        for entry in line.split('/') {
            let entry = entry.trim();
            if entry.text.is_empty() {
                continue;
            }
            let (key, value) = entry
                .split_once(':')
                .ok_or_else(|| entry.error("expected `key: value`"))?;
            let slot = match key.text.trim() {
                "generators" => &mut generators,
                "relations" => &mut relations,
                "orientation" => &mut orientation,
                "top_degree" => &mut top_degree,
                other => return Err(key.trim().error(format!("unknown key `{other}`"))),
            };
            if slot.is_some() {
                return Err(key.trim().error(format!("duplicate key `{}`", key.text.trim())));
            }
            *slot = Some(value);
        }
    }

    let end = Span { text: "", line: text.lines().count().max(1), column: 1 };
    let generators = generators.ok_or_else(|| end.error("missing `generators:` entry"))?;

    let mut parsed_generators = Vec::new();
    for item in generators.split(',') {
        let item = item.trim();
        let (name, degree) = item
            .split_once(':')
            .ok_or_else(|| item.error("expected `name:degree`"))?;
        let (name, degree) = (name.trim(), degree.trim());
        if !is_identifier(name.text) {
            return Err(name.error(format!("invalid generator name `{}`", name.text)));
        }
        let degree_value: u32 = degree
            .text
            .parse()
            .map_err(|_| degree.error(format!("invalid degree `{}`", degree.text)))?;
        parsed_generators.push(Generator { name: name.text.to_string(), degree: degree_value });
    }

    let top = match top_degree {
        Some(span) => {
            let span = span.trim();
            span.text
                .parse::<u32>()
                .map_err(|_| span.error(format!("invalid top degree `{}`", span.text)))?
        }
        None => 4,
    };

    // Degree and name checks happen before relations are parsed so that
    // expression errors cannot mask them.
    RingPresentation::validate_generators(&parsed_generators, top)?;
    let names: Vec<String> = parsed_generators.iter().map(|g| g.name.clone()).collect();
    let ev = FreeEvaluator { names: &names };

    let mut parsed_relations = Vec::new();
    if let Some(relations) = relations {
        if !relations.text.trim().is_empty() {
            for item in relations.split(',') {
                let item = item.trim();
                if item.text.is_empty() {
                    return Err(item.error("empty relation"));
                }
                let expr = parse_expr_at(item.text, item.line, item.column)?;
                parsed_relations.push(expr.eval(&ev)?);
            }
        }
    }

    let orientation = orientation.ok_or_else(|| end.error("missing `orientation:` entry"))?.trim();
    let orientation_poly = parse_expr_at(orientation.text, orientation.line, orientation.column)?
        .eval(&ev)?;
    let orientation_monomial = match orientation_poly.iter().next() {
        Some((m, c)) if orientation_poly.len() == 1 && c.is_one() => m.clone(),
        _ => return Err(orientation.error("orientation must be a single monomial")),
    };

    RingPresentation::new(parsed_generators, parsed_relations, orientation_monomial, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn expression_expansion() {
        let n = names(&["u", "v"]);
        let ev = FreeEvaluator { names: &n };
        let sq = parse_expr("(-2*u+v)^2").unwrap().eval(&ev).unwrap();
        let expect: Terms<Rational> = [
            (Monomial::from_exponents(vec![2, 0]), int(4)),
            (Monomial::from_exponents(vec![1, 1]), int(-4)),
            (Monomial::from_exponents(vec![0, 2]), int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(sq, expect);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let n = names(&["u"]);
        let ev = FreeEvaluator { names: &n };
        // -u^2 is -(u^2), and 2*3-4 = 2.
        let a = parse_expr("-u^2").unwrap().eval(&ev).unwrap();
        assert_eq!(a[&Monomial::from_exponents(vec![2])], int(-1));
        let b = parse_expr("2*3-4").unwrap().eval(&ev).unwrap();
        assert_eq!(b[&Monomial::one(1)], int(2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_expr_at("u + * v", 3, 5) {
            Err(RingError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 9)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("(u + v") {
            Err(RingError::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_generator_in_relation() {
        let err = parse_presentation("generators: u:2\nrelations: u^2 + w^2\norientation: u^2")
            .unwrap_err();
        match err {
            RingError::Syntax { line, column, message } => {
                assert_eq!((line, column), (2, 18));
                assert!(message.contains("`w`"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse_presentation("relations: u^2\norientation: u^2"),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("generators: u:2\ngenerators: v:2\norientation: u^2"),
            Err(RingError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("generators: u:2 / colour: red / orientation: u^2"),
            Err(RingError::Syntax { line: 1, column: 19, .. })
        ));
        assert!(matches!(
            parse_presentation("generators: u:2 / orientation: 2*u^2"),
            Err(RingError::Syntax { .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# Case I\n\ngenerators: u:2, v:2   # two classes\nrelations: u^2+u*v, v^2\norientation: u*v\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.generators().len(), 2);
    }
}
