//! Propositional sentences with a Liar constant, strong Kleene evaluation,
//! and the confirming-conjunction valuation.
//!
//! The Liar has no classical value, so it evaluates to [`TruthValue3::Paradox`].
//! Conjoining a sentence with the confirmer ("the sentence on the left of
//! this conjunction is true") keeps classical values as they are and sends a
//! paradoxical one to false. [`evaluate_ak`] applies exactly that collapse;
//! the confirmer itself is not a token of the language.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! s := s "->" s | s "|" s | s "&" s | "!" s | "(" s ")"
//!    | "TRUE" | "FALSE" | "LIAR" | atom        atom = [a-z][a-z0-9_]*
//! ```
//!
//! `->` associates to the right, `|` and `&` to the left.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sentence {
    Atom(String),
    True,
    False,
    Liar,
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
}

impl Sentence {
    pub fn atom(name: &str) -> Self {
        Sentence::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(s: Sentence) -> Self {
        Sentence::Not(Box::new(s))
    }

    pub fn and(a: Sentence, b: Sentence) -> Self {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Sentence, b: Sentence) -> Self {
        Sentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Sentence, b: Sentence) -> Self {
        Sentence::Implies(Box::new(a), Box::new(b))
    }

    /// Nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Atom(_) | Sentence::True | Sentence::False | Sentence::Liar => 0,
            Sentence::Not(s) => 1 + s.depth(),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn contains_liar(&self) -> bool {
        match self {
            Sentence::Liar => true,
            Sentence::Atom(_) | Sentence::True | Sentence::False => false,
            Sentence::Not(s) => s.contains_liar(),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                a.contains_liar() || b.contains_liar()
            }
        }
    }

    /// Replaces every Liar by `with`.
    pub fn substitute_liar(&self, with: &Sentence) -> Sentence {
        let sub = |s: &Sentence| Box::new(s.substitute_liar(with));
        match self {
            Sentence::Liar => with.clone(),
            Sentence::Atom(_) | Sentence::True | Sentence::False => self.clone(),
            Sentence::Not(s) => Sentence::Not(sub(s)),
            Sentence::And(a, b) => Sentence::And(sub(a), sub(b)),
            Sentence::Or(a, b) => Sentence::Or(sub(a), sub(b)),
            Sentence::Implies(a, b) => Sentence::Implies(sub(a), sub(b)),
        }
    }
}

/// Fully parenthesized, so the output parses back to the same tree.
impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Atom(name) => f.write_str(name),
            Sentence::True => f.write_str("TRUE"),
            Sentence::False => f.write_str("FALSE"),
            Sentence::Liar => f.write_str("LIAR"),
            Sentence::Not(s) => write!(f, "!{s}"),
            Sentence::And(a, b) => write!(f, "({a} & {b})"),
            Sentence::Or(a, b) => write!(f, "({a} | {b})"),
            Sentence::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue3 {
    True,
    False,
    Paradox,
}

impl TruthValue3 {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue3::True
        } else {
            TruthValue3::False
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TruthValue3::True => "true",
            TruthValue3::False => "false",
            TruthValue3::Paradox => "paradox",
        }
    }

    pub fn and(self, other: Self) -> Self {
        use TruthValue3::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (Paradox, _) | (_, Paradox) => Paradox,
            (True, True) => True,
        }
    }

    pub fn or(self, other: Self) -> Self {
        use TruthValue3::*;
        match (self, other) {
            (True, _) | (_, True) => True,
            (Paradox, _) | (_, Paradox) => Paradox,
            (False, False) => False,
        }
    }

    pub fn implies(self, other: Self) -> Self {
        (!self).or(other)
    }

    /// The value of `self ∧ ap`: paradox becomes false.
    pub fn collapse(self) -> Self {
        match self {
            TruthValue3::Paradox => TruthValue3::False,
            v => v,
        }
    }
}

/// Classical values for atoms. The Liar needs none.
impl core::ops::Not for TruthValue3 {
    type Output = Self;

    fn not(self) -> Self {
        match self {
            TruthValue3::True => TruthValue3::False,
            TruthValue3::False => TruthValue3::True,
            TruthValue3::Paradox => TruthValue3::Paradox,
        }
    }
}

pub type Assignment = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("UnboundAtom: {0} has no value")]
    UnboundAtom(String),
}

pub fn evaluate_kleene(s: &Sentence, a: &Assignment) -> Result<TruthValue3, EvalError> {
    Ok(match s {
        Sentence::Atom(name) => TruthValue3::from_bool(
            *a.get(name)
                .ok_or_else(|| EvalError::UnboundAtom(name.clone()))?,
        ),
        Sentence::True => TruthValue3::True,
        Sentence::False => TruthValue3::False,
        Sentence::Liar => TruthValue3::Paradox,
        Sentence::Not(x) => !evaluate_kleene(x, a)?,
        Sentence::And(x, y) => evaluate_kleene(x, a)?.and(evaluate_kleene(y, a)?),
        Sentence::Or(x, y) => evaluate_kleene(x, a)?.or(evaluate_kleene(y, a)?),
        Sentence::Implies(x, y) => evaluate_kleene(x, a)?.implies(evaluate_kleene(y, a)?),
    })
}

/// `W(z) = W(z ∧ ap)`: the Kleene value with paradox collapsed to false.
pub fn evaluate_ak(s: &Sentence, a: &Assignment) -> Result<bool, EvalError> {
    Ok(evaluate_kleene(s, a)?.collapse() == TruthValue3::True)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ParseError at {position}: expected {expected}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Arrow,
    Bar,
    Amp,
    Bang,
    LParen,
    RParen,
    True,
    False,
    Liar,
    Atom(&'a str),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and the offset just past it, without consuming.
    fn peek(&mut self) -> Result<Option<(Tok<'a>, usize)>, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let one = |t| Ok(Some((t, self.pos + 1)));
        match c {
            '|' => one(Tok::Bar),
            '&' => one(Tok::Amp),
            '!' => one(Tok::Bang),
            '(' => one(Tok::LParen),
            ')' => one(Tok::RParen),
            '-' if rest.starts_with("->") => Ok(Some((Tok::Arrow, self.pos + 2))),
            c if c.is_ascii_alphabetic() => {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                let word = &rest[..len];
                let tok = match word {
                    "TRUE" => Tok::True,
                    "FALSE" => Tok::False,
                    "LIAR" => Tok::Liar,
                    w if w.starts_with(|c: char| c.is_ascii_lowercase())
                        && w.chars()
                            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') =>
                    {
                        Tok::Atom(w)
                    }
                    _ => {
                        return Err(ParseError {
                            position: self.pos,
                            expected: "an atom, TRUE, FALSE or LIAR",
                        })
                    }
                };
                Ok(Some((tok, self.pos + len)))
            }
            _ => Err(ParseError {
                position: self.pos,
                expected: "a token",
            }),
        }
    }

    fn eat(&mut self, want: &Tok<'_>) -> Result<bool, ParseError> {
        match self.peek()? {
            Some((tok, end)) if &tok == want => {
                self.pos = end;
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn implication(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow)? {
            let rhs = self.implication()?;
            return Ok(Sentence::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Bar)? {
            lhs = Sentence::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp)? {
            lhs = Sentence::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Sentence, ParseError> {
        let expected = "a sentence";
        let Some((tok, end)) = self.peek()? else {
            return Err(ParseError {
                position: self.pos,
                expected,
            });
        };
        let start = self.pos;
        self.pos = end;
        match tok {
            Tok::Bang => Ok(Sentence::not(self.unary()?)),
            Tok::True => Ok(Sentence::True),
            Tok::False => Ok(Sentence::False),
            Tok::Liar => Ok(Sentence::Liar),
            Tok::Atom(name) => Ok(Sentence::atom(name)),
            Tok::LParen => {
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen)? {
                    return Err(ParseError {
                        position: self.pos,
                        expected: "')'",
                    });
                }
                Ok(inner)
            }
            Tok::Arrow | Tok::Bar | Tok::Amp | Tok::RParen => Err(ParseError {
                position: start,
                expected,
            }),
        }
    }
}

pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let s = p.implication()?;
    if p.peek()?.is_some() {
        return Err(ParseError {
            position: p.pos,
            expected: "end of input",
        });
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad assignment {0:?}, expected name=0 or name=1")]
pub struct AssignmentError(pub String);

/// Parses `p=1,q=0`.
pub fn parse_assignment(text: &str) -> Result<Assignment, AssignmentError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let bad = || AssignmentError(item.to_string());
            let (name, value) = item.split_once('=').ok_or_else(bad)?;
            let name = name.trim();
            let valid_name = name.starts_with(|c: char| c.is_ascii_lowercase())
                && name
                    .chars()
                    .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
            let value = match value.trim() {
                "1" => true,
                "0" => false,
                _ => return Err(bad()),
            };
            if !valid_name {
                return Err(bad());
            }
            Ok((name.to_string(), value))
        })
        .collect()
}
