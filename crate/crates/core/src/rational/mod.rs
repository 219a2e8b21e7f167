//! Rational expressions over a graph alphabet.
//!
//! Expressions are built from the empty set `0`, single edges, identities
//! `id:<vertex>`, union `+`, typed concatenation `.` and Kleene plus `^+`.
//! There is no Kleene star.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('.' factor)*
//! factor := atom '^+'*
//! atom   := <edge> | 'id:'<vertex> | '0' | '(' expr ')'
//! ```
//!
//! Edge names may themselves contain `.` and `+`, so the binary operators must
//! be separated from names by whitespace.

mod compile;
mod state_elim;

use std::fmt;

use thiserror::Error;

use crate::alphabet::GraphAlphabet;
use crate::automaton::AutomatonError;

pub use compile::{compile, eliminate_silent};
pub use state_elim::to_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatError {
    #[error("syntax error at token {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatExpr {
    Empty,
    Atom(String),
    Id(String),
    Union(Box<RatExpr>, Box<RatExpr>),
    Concat(Box<RatExpr>, Box<RatExpr>),
    Plus(Box<RatExpr>),
}

impl RatExpr {
    pub fn atom(edge: impl Into<String>) -> Self {
        RatExpr::Atom(edge.into())
    }

    pub fn id(vertex: impl Into<String>) -> Self {
        RatExpr::Id(vertex.into())
    }

    /// `l + r`, with `0 + e = e + 0 = e`.
    pub fn union(l: RatExpr, r: RatExpr) -> Self {
        match (l, r) {
            (RatExpr::Empty, e) | (e, RatExpr::Empty) => e,
            (l, r) => RatExpr::Union(Box::new(l), Box::new(r)),
        }
    }

    /// `l . r`, with `0 . e = e . 0 = 0`.
    pub fn concat(l: RatExpr, r: RatExpr) -> Self {
        match (l, r) {
            (RatExpr::Empty, _) | (_, RatExpr::Empty) => RatExpr::Empty,
            (l, r) => RatExpr::Concat(Box::new(l), Box::new(r)),
        }
    }

    /// `e^+`, with `0^+ = 0`.
    pub fn plus(e: RatExpr) -> Self {
        match e {
            RatExpr::Empty => RatExpr::Empty,
            e => RatExpr::Plus(Box::new(e)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            RatExpr::Empty | RatExpr::Atom(_) | RatExpr::Id(_) => 1,
            RatExpr::Union(l, r) | RatExpr::Concat(l, r) => 1 + l.size() + r.size(),
            RatExpr::Plus(e) => 1 + e.size(),
        }
    }

    /// Checks that every atom names an edge and every identity a vertex.
    pub fn check(&self, alphabet: &GraphAlphabet) -> Result<(), RatError> {
        match self {
            RatExpr::Empty => Ok(()),
            RatExpr::Atom(a) => alphabet
                .edge_id(a)
                .map(|_| ())
                .ok_or_else(|| RatError::UnknownEdge(a.clone())),
            RatExpr::Id(v) => alphabet
                .vertex_id(v)
                .map(|_| ())
                .ok_or_else(|| RatError::UnknownVertex(v.clone())),
            RatExpr::Union(l, r) | RatExpr::Concat(l, r) => {
                l.check(alphabet)?;
                r.check(alphabet)
            }
            RatExpr::Plus(e) => e.check(alphabet),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // 0: union, 1: concatenation, 2: plus and atoms
        let own = match self {
            RatExpr::Union(..) => 0,
            RatExpr::Concat(..) => 1,
            _ => 2,
        };
        if own < level {
            f.write_str("(")?;
        }
        match self {
            RatExpr::Empty => f.write_str("0")?,
            RatExpr::Atom(a) => f.write_str(a)?,
            RatExpr::Id(v) => write!(f, "id:{v}")?,
            RatExpr::Union(l, r) => {
                l.write(f, 0)?;
                f.write_str(" + ")?;
                r.write(f, 1)?;
            }
            RatExpr::Concat(l, r) => {
                l.write(f, 1)?;
                f.write_str(" . ")?;
                r.write(f, 2)?;
            }
            RatExpr::Plus(e) => {
                e.write(f, 2)?;
                f.write_str("^+")?;
            }
        }
        if own < level {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Renders with minimal parentheses.
pub fn print_expr(e: &RatExpr) -> String {
    e.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    PlusSuffix,
    Union,
    Dot,
    Zero,
    Id(String),
    Name(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>, RatError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            '^' => {
                chars.next();
                if chars.next() != Some('+') {
                    return Err(RatError::Syntax {
                        position: tokens.len(),
                        message: "`^` must be followed by `+`".into(),
                    });
                }
                tokens.push(Token::PlusSuffix);
            }
            _ => {
                let mut run = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '^') {
                        break;
                    }
                    run.push(c);
                    chars.next();
                }
                tokens.push(match run.as_str() {
                    "+" => Token::Union,
                    "." => Token::Dot,
                    "0" => Token::Zero,
                    _ => match run.strip_prefix("id:") {
                        Some(v) => Token::Id(v.to_string()),
                        None => Token::Name(run),
                    },
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    alphabet: &'a GraphAlphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error(&self, message: impl Into<String>) -> RatError {
        RatError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<RatExpr, RatError> {
        let mut e = self.term()?;
        while self.peek() == Some(&Token::Union) {
            self.pos += 1;
            let r = self.term()?;
            e = RatExpr::Union(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<RatExpr, RatError> {
        let mut e = self.factor()?;
        while self.peek() == Some(&Token::Dot) {
            self.pos += 1;
            let r = self.factor()?;
            e = RatExpr::Concat(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<RatExpr, RatError> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Token::PlusSuffix) {
            self.pos += 1;
            e = RatExpr::Plus(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RatExpr, RatError> {
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Token::Zero => Ok(RatExpr::Empty),
            Token::Name(n) => {
                if self.alphabet.edge_id(&n).is_none() {
                    return Err(RatError::UnknownEdge(n));
                }
                Ok(RatExpr::Atom(n))
            }
            Token::Id(v) => {
                if self.alphabet.vertex_id(&v).is_none() {
                    return Err(RatError::UnknownVertex(v));
                }
                Ok(RatExpr::Id(v))
            }
            Token::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected {other:?}")))
            }
        }
    }
}

/// Parses an expression, resolving names against `alphabet`.
pub fn parse_expr(alphabet: &GraphAlphabet, text: &str) -> Result<RatExpr, RatError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        alphabet,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}
