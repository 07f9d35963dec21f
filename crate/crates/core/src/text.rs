//! Line-oriented text format for constraint systems.
//!
//! ```text
//! # comment
//! mod 16
//! x >= 0
//! x + 1 <= 0
//! y - 2 < x + 3
//! ```

use std::fmt;

use thiserror::Error;

use crate::arith::{Modulus, ModulusError};
use crate::scalar::Scalar;
use crate::system::{Constraint, ConstraintSystem, Relation, Rhs, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Modulus(#[from] ModulusError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Int(&'a str),
    Plus,
    Minus,
    Rel(Relation),
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Rel(r) => format!("`{r}`"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer { src, pos: 0, line }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    /// Next token and its 1-based column.
    fn next(&mut self) -> Result<Option<(Tok<'a>, usize)>, ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let col = start + 1;
        let c = bytes[start];
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Tok::Ident(&self.src[start..self.pos])
        } else if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphabetic() || bytes[self.pos] == b'_')
            {
                return Err(self.err(col, "malformed number"));
            }
            Tok::Int(&self.src[start..self.pos])
        } else {
            self.pos += 1;
            let followed_by_eq = bytes.get(self.pos) == Some(&b'=');
            match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'=' => Tok::Rel(Relation::Eq),
                b'<' if followed_by_eq => {
                    self.pos += 1;
                    Tok::Rel(Relation::Le)
                }
                b'<' => Tok::Rel(Relation::Lt),
                b'>' if followed_by_eq => {
                    self.pos += 1;
                    Tok::Rel(Relation::Ge)
                }
                b'>' => Tok::Rel(Relation::Gt),
                _ => {
                    let ch = self.src[start..].chars().next().unwrap_or('?');
                    return Err(self.err(col, format!("unexpected character {ch:?}")));
                }
            }
        };
        Ok(Some((tok, col)))
    }

    fn column_at_end(&self) -> usize {
        self.src.len() + 1
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_int<S: Scalar>(
    digits: &str,
    negative: bool,
    line: usize,
    column: usize,
) -> Result<S, ParseError> {
    let v: S = digits.parse().map_err(|_| ParseError {
        line,
        column,
        message: format!("integer `{digits}` out of range"),
    })?;
    Ok(if negative { -v } else { v })
}

struct LineParser<'a, 'b, S: Scalar> {
    lex: Lexer<'a>,
    peeked: Option<Option<(Tok<'a>, usize)>>,
    sys: &'b mut ConstraintSystem<S>,
}

impl<'a, S: Scalar> LineParser<'a, '_, S> {
    fn peek(&mut self) -> Result<Option<&(Tok<'a>, usize)>, ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex.next()?);
        }
        Ok(self.peeked.as_ref().unwrap().as_ref())
    }

    fn bump(&mut self) -> Result<Option<(Tok<'a>, usize)>, ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex.next(),
        }
    }

    fn expected(&self, what: &str, got: Option<(Tok<'a>, usize)>) -> ParseError {
        match got {
            Some((tok, col)) => self
                .lex
                .err(col, format!("expected {what}, found {}", tok.describe())),
            None => self.lex.err(
                self.lex.column_at_end(),
                format!("expected {what}, found end of line"),
            ),
        }
    }

    fn offset(&mut self) -> Result<S, ParseError> {
        let negative = match self.peek()? {
            Some((Tok::Plus, _)) => false,
            Some((Tok::Minus, _)) => true,
            _ => return Ok(S::zero()),
        };
        self.bump()?;
        match self.bump()? {
            Some((Tok::Int(d), col)) => parse_int(d, negative, self.lex.line, col),
            other => Err(self.expected("unsigned integer offset", other)),
        }
    }

    fn term_after_ident(&mut self, name: &str) -> Result<Term<S>, ParseError> {
        let var = self
            .sys
            .var(name)
            .expect("lexer only yields valid identifiers");
        let offset = self.offset()?;
        Ok(Term::new(var, offset))
    }

    fn constraint(&mut self) -> Result<Constraint<S>, ParseError> {
        let lhs = match self.bump()? {
            Some((Tok::Ident(name), _)) => self.term_after_ident(name)?,
            other => return Err(self.expected("variable", other)),
        };
        let rel = match self.bump()? {
            Some((Tok::Rel(r), _)) => r,
            other => return Err(self.expected("relation", other)),
        };
        let rhs = match self.bump()? {
            Some((Tok::Ident(name), _)) => Rhs::Term(self.term_after_ident(name)?),
            Some((Tok::Int(d), col)) => Rhs::Const(parse_int(d, false, self.lex.line, col)?),
            Some((sign @ (Tok::Plus | Tok::Minus), _)) => match self.bump()? {
                Some((Tok::Int(d), col)) => {
                    Rhs::Const(parse_int(d, sign == Tok::Minus, self.lex.line, col)?)
                }
                other => return Err(self.expected("integer constant", other)),
            },
            other => return Err(self.expected("variable or constant", other)),
        };
        if let Some(tok) = self.bump()? {
            return Err(self.expected("end of line", Some(tok)));
        }
        Ok(Constraint::new(lhs, rel, rhs))
    }
}

fn parse_header<S: Scalar>(line: &str, lineno: usize) -> Result<Modulus<S>, TextError> {
    let mut lex = Lexer::new(line, lineno);
    match lex.next()? {
        Some((Tok::Ident("mod"), _)) => {}
        _ => return Err(ModulusError::MissingHeader.into()),
    }
    let n = match lex.next()? {
        Some((Tok::Int(d), col)) => parse_int::<S>(d, false, lineno, col)?,
        Some((Tok::Minus, _)) => match lex.next()? {
            Some((Tok::Int(d), col)) => parse_int::<S>(d, true, lineno, col)?,
            _ => return Err(lex.err(1, "expected modulus after `mod`").into()),
        },
        Some((_, col)) => return Err(lex.err(col, "expected decimal modulus after `mod`").into()),
        None => {
            return Err(lex
                .err(lex.column_at_end(), "expected modulus after `mod`")
                .into())
        }
    };
    if let Some((tok, col)) = lex.next()? {
        return Err(lex
            .err(col, format!("unexpected {} after modulus", tok.describe()))
            .into());
    }
    Ok(Modulus::new(n)?)
}

/// Parses a system. Variables are numbered in order of first occurrence.
pub fn parse_system<S: Scalar>(text: &str) -> Result<ConstraintSystem<S>, TextError> {
    let mut sys: Option<ConstraintSystem<S>> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        match sys.as_mut() {
            None => sys = Some(ConstraintSystem::new(parse_header(line, lineno)?)),
            Some(sys) => {
                let c = LineParser {
                    lex: Lexer::new(line, lineno),
                    peeked: None,
                    sys: &mut *sys,
                }
                .constraint()?;
                sys.push(c)
                    .expect("parser interns every variable it references");
            }
        }
    }
    sys.ok_or(TextError::Modulus(ModulusError::MissingHeader))
}

/// Canonical text for a system: header, then one constraint per line.
pub fn render_system<S: Scalar>(sys: &ConstraintSystem<S>) -> String {
    let mut out = format!("mod {}\n", sys.modulus());
    for c in sys.constraints() {
        out.push_str(&sys.display_constraint(c));
        out.push('\n');
    }
    out
}
