//! Conway notation for tangles: parsing, canonical printing, and the
//! continued fraction of a rational (product) tangle.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! top    := "[" expr "]" | expr
//! expr   := sum ("," sum)*
//! sum    := prod ("+" prod)*
//! prod   := atom (WS atom)*
//! atom   := INT | "(" expr ")"
//! INT    := "-"? [0-9]+
//! ```
//!
//! Juxtaposed factors must be separated by whitespace, so `2 1 2` is a
//! product of three tangles while `212` is the single integer 212.  Spaces
//! are also tolerated around `,`, `+` and parentheses.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A reduced fraction with positive denominator.
pub type Fraction = Ratio<i64>;

/// Abstract syntax of Conway notation.
///
/// `Product` is binary and left-associated by the parser, because tangle
/// multiplication is not associative.  A comma-separated list is kept as one
/// `Concat` node with at least two entries: the entries are placed side by
/// side in a single row, which is not the same as nesting binary
/// concatenations.  `Closure` only appears at the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConwayExpr {
    Int(i64),
    Product(Box<ConwayExpr>, Box<ConwayExpr>),
    Sum(Box<ConwayExpr>, Box<ConwayExpr>),
    Concat(Vec<ConwayExpr>),
    Closure(Box<ConwayExpr>),
}

/// What went wrong while reading Conway notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConwayErrorKind {
    /// A character outside the grammar's alphabet, or a malformed integer.
    Lexical,
    /// Unbalanced brackets, an empty operand, or misplaced tokens.
    Structural,
}

/// Errors from [`parse_conway`] and [`rational_fraction`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error("{kind:?} error at position {position}: {reason}")]
    Parse {
        kind: ConwayErrorKind,
        position: usize,
        reason: &'static str,
    },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(&'static str),
}

impl ConwayError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ConwayError::Parse { position, .. } => Some(*position),
            ConwayError::UnsupportedShape(_) => None,
        }
    }
}

impl ConwayExpr {
    pub fn int(n: i64) -> Self {
        ConwayExpr::Int(n)
    }

    pub fn product(a: ConwayExpr, b: ConwayExpr) -> Self {
        ConwayExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn sum(a: ConwayExpr, b: ConwayExpr) -> Self {
        ConwayExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn closure(a: ConwayExpr) -> Self {
        ConwayExpr::Closure(Box::new(a))
    }

    /// The left-associated product `x₁ x₂ … xₙ`.
    ///
    /// # Panics
    /// If `xs` is empty.
    pub fn product_of(xs: &[i64]) -> Self {
        let mut it = xs.iter();
        let first = ConwayExpr::Int(*it.next().expect("at least one factor"));
        it.fold(first, |acc, &x| {
            ConwayExpr::product(acc, ConwayExpr::Int(x))
        })
    }

    /// The comma list `x₁, x₂, …, xₙ` of integer tangles (`n ≥ 2`), or the
    /// single integer tangle when `n = 1`.
    pub fn concat_of(xs: &[i64]) -> Self {
        match xs {
            [] => panic!("at least one entry"),
            [x] => ConwayExpr::Int(*x),
            _ => ConwayExpr::Concat(xs.iter().map(|&x| ConwayExpr::Int(x)).collect()),
        }
    }

    /// The factors of a left-associated product of integers, if that is what
    /// this expression is.
    pub fn product_factors(&self) -> Option<Vec<i64>> {
        match self {
            ConwayExpr::Int(n) => Some(vec![*n]),
            ConwayExpr::Product(a, b) => match **b {
                ConwayExpr::Int(n) => {
                    let mut v = a.product_factors()?;
                    v.push(n);
                    Some(v)
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// The entries of a comma list of integers (a single integer counts as
    /// a one-entry list).
    pub fn concat_entries(&self) -> Option<Vec<i64>> {
        match self {
            ConwayExpr::Int(n) => Some(vec![*n]),
            ConwayExpr::Concat(items) => items
                .iter()
                .map(|i| match i {
                    ConwayExpr::Int(n) => Some(*n),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
}

/// A token with its byte offset and whether whitespace came right before it.
#[derive(Debug, Clone, Copy)]
struct Lexeme {
    tok: Tok,
    pos: usize,
    spaced: bool,
}

fn lex_err(position: usize, reason: &'static str) -> ConwayError {
    ConwayError::Parse {
        kind: ConwayErrorKind::Lexical,
        position,
        reason,
    }
}

fn syn_err(position: usize, reason: &'static str) -> ConwayError {
    ConwayError::Parse {
        kind: ConwayErrorKind::Structural,
        position,
        reason,
    }
}

fn lex(input: &str) -> Result<Vec<Lexeme>, ConwayError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut spaced = false;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' => {
                spaced = true;
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'+' => Tok::Plus,
            b'-' | b'0'..=b'9' => {
                let start = i;
                if b == b'-' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(lex_err(start, "'-' must be followed by digits"));
                    }
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = input[start..i]
                    .parse::<i64>()
                    .map_err(|_| lex_err(start, "integer out of range"))?;
                out.push(Lexeme {
                    tok: Tok::Int(n),
                    pos: start,
                    spaced,
                });
                spaced = false;
                continue;
            }
            _ => return Err(lex_err(i, "unexpected character")),
        };
        out.push(Lexeme {
            tok,
            pos: i,
            spaced,
        });
        spaced = false;
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexeme>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Lexeme> {
        self.toks.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |l| l.pos)
    }

    fn expr(&mut self) -> Result<ConwayExpr, ConwayError> {
        let mut items = vec![self.sum()?];
        while matches!(
            self.peek(),
            Some(Lexeme {
                tok: Tok::Comma,
                ..
            })
        ) {
            self.at += 1;
            items.push(self.sum()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            ConwayExpr::Concat(items)
        })
    }

    fn sum(&mut self) -> Result<ConwayExpr, ConwayError> {
        let mut acc = self.prod()?;
        while matches!(self.peek(), Some(Lexeme { tok: Tok::Plus, .. })) {
            self.at += 1;
            let rhs = self.prod()?;
            acc = ConwayExpr::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<ConwayExpr, ConwayError> {
        let mut acc = self.atom()?;
        while let Some(l) = self.peek() {
            if !matches!(l.tok, Tok::Int(_) | Tok::LParen) {
                break;
            }
            if !l.spaced {
                return Err(syn_err(
                    l.pos,
                    "juxtaposed factors need whitespace between them",
                ));
            }
            let rhs = self.atom()?;
            acc = ConwayExpr::product(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ConwayExpr, ConwayError> {
        let pos = self.pos();
        match self.peek().map(|l| l.tok) {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(ConwayExpr::Int(n))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek().map(|l| l.tok) {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(syn_err(self.pos(), "expected ')'")),
                }
            }
            Some(Tok::LBracket) => Err(syn_err(
                pos,
                "'[' is only allowed around the whole expression",
            )),
            _ => Err(syn_err(pos, "empty operand")),
        }
    }
}

/// Parses Conway notation.
///
/// ```
/// use thompson_knots::conway_notation::{parse_conway, ConwayExpr};
/// let e = parse_conway("3 2,4").unwrap();
/// assert_eq!(e, ConwayExpr::Concat(vec![ConwayExpr::product_of(&[3, 2]), ConwayExpr::Int(4)]));
/// ```
pub fn parse_conway(input: &str) -> Result<ConwayExpr, ConwayError> {
    let toks = lex(input)?;
    let trimmed_end = input.trim_end().len();
    let closed = matches!(
        toks.first(),
        Some(Lexeme {
            tok: Tok::LBracket,
            ..
        })
    );
    let mut p = Parser {
        toks,
        at: usize::from(closed),
        end: trimmed_end,
    };
    if p.toks.is_empty() {
        return Err(syn_err(0, "empty input"));
    }
    let inner = p.expr()?;
    if closed {
        match p.peek().map(|l| l.tok) {
            Some(Tok::RBracket) => p.at += 1,
            _ => return Err(syn_err(p.pos(), "expected ']'")),
        }
    }
    if let Some(l) = p.peek() {
        let reason = match l.tok {
            Tok::RParen => "unbalanced ')'",
            Tok::RBracket => "unbalanced ']'",
            _ => "unexpected token after expression",
        };
        return Err(syn_err(l.pos, reason));
    }
    Ok(if closed {
        ConwayExpr::closure(inner)
    } else {
        inner
    })
}

/// Canonical text of an expression; `parse_conway(&print_conway(e)) == e`.
///
/// ```
/// use thompson_knots::conway_notation::{print_conway, ConwayExpr};
/// let e = ConwayExpr::product(ConwayExpr::Int(3), ConwayExpr::product_of(&[4, 2]));
/// assert_eq!(print_conway(&e), "3 (4 2)");
/// ```
pub fn print_conway(e: &ConwayExpr) -> String {
    e.to_string()
}

/// Binding strength, tightest highest.
fn level(e: &ConwayExpr) -> u8 {
    match e {
        ConwayExpr::Int(_) => 3,
        ConwayExpr::Product(..) => 2,
        ConwayExpr::Sum(..) => 1,
        ConwayExpr::Concat(_) | ConwayExpr::Closure(_) => 0,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &ConwayExpr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ConwayExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConwayExpr::Int(n) => write!(f, "{n}"),
            ConwayExpr::Product(a, b) => {
                write_at(f, a, 2)?;
                f.write_str(" ")?;
                write_at(f, b, 3)
            }
            ConwayExpr::Sum(a, b) => {
                write_at(f, a, 1)?;
                f.write_str("+")?;
                write_at(f, b, 2)
            }
            ConwayExpr::Concat(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_at(f, item, 1)?;
                }
                Ok(())
            }
            ConwayExpr::Closure(inner) => write!(f, "[{inner}]"),
        }
    }
}

/// The continued fraction of the rational tangle `x₁ x₂ … xₙ`:
/// `cf(x₁) = x₁` and `cf(x₁ … xₖ) = xₖ + 1 / cf(x₁ … xₖ₋₁)`.
///
/// A surrounding closure is looked through.
///
/// ```
/// use thompson_knots::conway_notation::{parse_conway, rational_fraction, Fraction};
/// let f = rational_fraction(&parse_conway("3 2").unwrap()).unwrap();
/// assert_eq!(f, Fraction::new(7, 3));
/// ```
pub fn rational_fraction(e: &ConwayExpr) -> Result<Fraction, ConwayError> {
    let e = match e {
        ConwayExpr::Closure(inner) => inner,
        other => other,
    };
    let xs = e.product_factors().ok_or(ConwayError::UnsupportedShape(
        "not a left-associated product of integers",
    ))?;
    if xs.iter().any(|&x| x <= 0) {
        return Err(ConwayError::UnsupportedShape("factors must be positive"));
    }
    let mut cf = Fraction::from_integer(xs[0]);
    for &x in &xs[1..] {
        cf = Fraction::from_integer(x) + cf.recip();
    }
    Ok(cf)
}
