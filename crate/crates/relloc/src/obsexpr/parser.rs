//! Recursive-descent parser for the observable expression language.
//!
//! Grammar (EBNF, whitespace insensitive):
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := factor { ("*" | "/") factor }
//! factor := ("+" | "-") factor | power
//! power  := atom [ "^" factor ]                  (right-associative)
//! atom   := number | name | "sqrt" "(" expr ")" | "(" expr ")"
//! number := digits ["." digits] [("e" | "E") ["+" | "-"] digits]
//! name   := letter { letter | digit | "_" }
//! ```
//!
//! Names resolve to the core symbols `x1..x3, p1..p3, s1..s3, m, S, c` or to
//! caller-supplied aliases, which splice in whole expressions. The exponent of
//! `^` must constant-fold to an integer: `x1^2^3` parses as `x1^(2^3) = x1^8`
//! while `x1^p1` is rejected. Errors carry the byte offset where they occurred.

use super::{Expression, Symbol};
use thiserror::Error;

/// Named expressions that extend the parser's symbol namespace.
///
/// Lookup is by exact name; insertion order is kept for error listings.
#[derive(Clone, Debug, Default)]
pub struct AliasTable {
    entries: Vec<(String, Expression)>,
}

impl AliasTable {
    pub fn new() -> Self {
        AliasTable::default()
    }

    /// Insert or replace an alias.
    pub fn insert(&mut self, name: impl Into<String>, expr: Expression) {
        let name = name.into();
        if let Some(slot) = self.entries.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = expr;
        } else {
            self.entries.push((name, expr));
        }
    }

    pub fn get(&self, name: &str) -> Option<&Expression> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// What went wrong; [`ParseError`] adds where.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected a value, found `{0}`")]
    ExpectedAtom(String),
    #[error("expected `)` to close the group opened here")]
    MissingClosingParen,
    #[error("exponent must reduce to an integer constant")]
    NonIntegerExponent,
    #[error("unknown symbol `{name}`; valid symbols: {valid}")]
    UnknownSymbol { name: String, valid: String },
    #[error("unexpected trailing input `{0}`")]
    TrailingInput(String),
    #[error("malformed number literal `{0}`")]
    BadNumber(String),
}

/// A syntax or symbol-resolution error with its byte offset in the input.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("parse error at offset {offset}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl ParseError {
    fn new(kind: ParseErrorKind, offset: usize) -> Self {
        ParseError { kind, offset }
    }
}

/// Parse using only the core symbol alphabet.
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    parse_with_aliases(text, &AliasTable::default())
}

/// Parse with additional named expressions available as symbols.
pub fn parse_with_aliases(text: &str, aliases: &AliasTable) -> Result<Expression, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end_offset: text.len(),
        aliases,
    };
    let expr = p.parse_expr()?;
    if let Some((tok, off)) = p.peek() {
        return Err(ParseError::new(
            ParseErrorKind::TrailingInput(tok.describe()),
            off,
        ));
    }
    Ok(expr)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(v) => format!("{v}"),
            Token::Name(n) => n.clone(),
            Token::Plus => "+".into(),
            Token::Minus => "-".into(),
            Token::Star => "*".into(),
            Token::Slash => "/".into(),
            Token::Caret => "^".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            b'^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let slice = &text[start..i];
                let value = slice.parse::<f64>().map_err(|_| {
                    ParseError::new(ParseErrorKind::BadNumber(slice.to_string()), start)
                })?;
                out.push((Token::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Name(text[start..i].to_string()), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(ParseErrorKind::UnexpectedChar(ch), i));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_offset: usize,
    aliases: &'a AliasTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(Token, usize)> {
        self.tokens.get(self.pos).cloned()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, off)| *off)
            .unwrap_or(self.end_offset)
    }

    fn parse_expr(&mut self) -> Result<Expression, ParseError> {
        let mut terms = vec![self.parse_term()?];
        loop {
            match self.peek() {
                Some((Token::Plus, _)) => {
                    self.advance();
                    terms.push(self.parse_term()?);
                }
                Some((Token::Minus, _)) => {
                    self.advance();
                    terms.push(Expression::neg(self.parse_term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expression::Add(terms)
        })
    }

    fn parse_term(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some((Token::Star, _)) => {
                    self.advance();
                    let rhs = self.parse_factor()?;
                    acc = match acc {
                        Expression::Mul(mut v) => {
                            v.push(rhs);
                            Expression::Mul(v)
                        }
                        other => Expression::Mul(vec![other, rhs]),
                    };
                }
                Some((Token::Slash, _)) => {
                    self.advance();
                    let rhs = self.parse_factor()?;
                    let inv = Expression::Powi(Box::new(rhs), -1);
                    acc = match acc {
                        Expression::Mul(mut v) => {
                            v.push(inv);
                            Expression::Mul(v)
                        }
                        other => Expression::Mul(vec![other, inv]),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Expression, ParseError> {
        match self.peek() {
            Some((Token::Minus, _)) => {
                self.advance();
                Ok(Expression::neg(self.parse_factor()?))
            }
            Some((Token::Plus, _)) => {
                self.advance();
                self.parse_factor()
            }
            _ => self.parse_power(),
        }
    }

    fn parse_power(&mut self) -> Result<Expression, ParseError> {
        let base = self.parse_atom()?;
        if let Some((Token::Caret, _)) = self.peek() {
            self.advance();
            let exp_offset = self.here();
            let exponent = self.parse_factor()?;
            let k = match exponent.simplified() {
                Expression::Const(c)
                    if (c - c.round()).abs() <= 1e-9 && c.abs() <= f64::from(i32::MAX) =>
                {
                    c.round() as i32
                }
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::NonIntegerExponent,
                        exp_offset,
                    ))
                }
            };
            return Ok(Expression::Powi(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expression, ParseError> {
        let Some((tok, off)) = self.peek() else {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedEnd,
                self.end_offset,
            ));
        };
        match tok {
            Token::Num(v) => {
                self.advance();
                Ok(Expression::Const(v))
            }
            Token::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some((Token::RParen, _)) => {
                        self.advance();
                        Ok(inner)
                    }
                    _ => Err(ParseError::new(ParseErrorKind::MissingClosingParen, off)),
                }
            }
            Token::Name(name) if name == "sqrt" => {
                self.advance();
                match self.peek() {
                    Some((Token::LParen, lp_off)) => {
                        self.advance();
                        let inner = self.parse_expr()?;
                        match self.peek() {
                            Some((Token::RParen, _)) => {
                                self.advance();
                                Ok(Expression::Sqrt(Box::new(inner)))
                            }
                            _ => Err(ParseError::new(
                                ParseErrorKind::MissingClosingParen,
                                lp_off,
                            )),
                        }
                    }
                    other => Err(ParseError::new(
                        ParseErrorKind::ExpectedAtom(
                            other.map(|(t, _)| t.describe()).unwrap_or("end".into()),
                        ),
                        self.here(),
                    )),
                }
            }
            Token::Name(name) => {
                self.advance();
                if let Some(sym) = Symbol::from_name(&name) {
                    return Ok(Expression::Sym(sym));
                }
                if let Some(expr) = self.aliases.get(&name) {
                    return Ok(expr.clone());
                }
                let mut valid: Vec<String> =
                    Symbol::ALL.iter().map(Symbol::name).collect();
                valid.extend(self.aliases.names().map(str::to_string));
                Err(ParseError::new(
                    ParseErrorKind::UnknownSymbol {
                        name,
                        valid: valid.join(", "),
                    },
                    off,
                ))
            }
            other => Err(ParseError::new(
                ParseErrorKind::ExpectedAtom(other.describe()),
                off,
            )),
        }
    }
}
