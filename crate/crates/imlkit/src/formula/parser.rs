//! Recursive-descent parser for the ASCII surface grammar, with Unicode
//! aliases accepted on input. Errors carry the byte offset of the offending
//! token.

use super::Formula;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Top,
    Bot,
    Not,
    BoxOp,
    DiaOp,
    And,
    Or,
    Impl,
    Iff,
    LParen,
    RParen,
}

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push((i, Tok::LParen));
            }
            ')' => {
                chars.next();
                out.push((i, Tok::RParen));
            }
            '~' | '¬' => {
                chars.next();
                out.push((i, Tok::Not));
            }
            '&' | '∧' => {
                chars.next();
                out.push((i, Tok::And));
            }
            '|' | '∨' => {
                chars.next();
                out.push((i, Tok::Or));
            }
            '→' => {
                chars.next();
                out.push((i, Tok::Impl));
            }
            '↔' => {
                chars.next();
                out.push((i, Tok::Iff));
            }
            '⊤' => {
                chars.next();
                out.push((i, Tok::Top));
            }
            '⊥' => {
                chars.next();
                out.push((i, Tok::Bot));
            }
            '□' => {
                chars.next();
                out.push((i, Tok::BoxOp));
            }
            '◊' | '♦' => {
                chars.next();
                out.push((i, Tok::DiaOp));
            }
            'T' => {
                chars.next();
                out.push((i, Tok::Top));
            }
            'F' => {
                chars.next();
                out.push((i, Tok::Bot));
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    chars.next();
                    chars.next();
                    out.push((i, Tok::Impl));
                } else {
                    return Err(err(i, "expected '->'"));
                }
            }
            '<' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(&b'-'), Some(&b'>')) => {
                    chars.next();
                    chars.next();
                    chars.next();
                    out.push((i, Tok::Iff));
                }
                (Some(&b'>'), _) => {
                    chars.next();
                    chars.next();
                    out.push((i, Tok::DiaOp));
                }
                _ => return Err(err(i, "expected '<>' or '<->'")),
            },
            '[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    chars.next();
                    chars.next();
                    out.push((i, Tok::BoxOp));
                } else {
                    return Err(err(i, "expected '[]'"));
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Atom(name)));
            }
            _ => return Err(err(i, format!("unknown token {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // iff is lowest; desugars to a conjunction of implications
    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let a = self.parse_impl()?;
        if self.peek() == Some(&Tok::Iff) {
            self.bump();
            let b = self.parse_iff()?;
            Ok(Formula::and(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(b, a),
            ))
        } else {
            Ok(a)
        }
    }

    fn parse_impl(&mut self) -> Result<Formula, ParseError> {
        let a = self.parse_or()?;
        if self.peek() == Some(&Tok::Impl) {
            self.bump();
            let b = self.parse_impl()?;
            Ok(Formula::imp(a, b))
        } else {
            Ok(a)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut a = self.parse_and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            a = Formula::or(a, self.parse_and()?);
        }
        Ok(a)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut a = self.parse_unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            a = Formula::and(a, self.parse_unary()?);
        }
        Ok(a)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::neg(self.parse_unary()?))
            }
            Some(Tok::BoxOp) => {
                self.bump();
                Ok(Formula::boxed(self.parse_unary()?))
            }
            Some(Tok::DiaOp) => {
                self.bump();
                Ok(Formula::dia(self.parse_unary()?))
            }
            _ => self.parse_primary(),
        }
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Atom(name)) => Ok(Formula::Atom(name)),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let f = self.parse_iff()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(f),
                    _ => Err(err(close, "unbalanced parentheses: expected ')'")),
                }
            }
            Some(t) => Err(err(offset, format!("expected a formula, found {t:?}"))),
            None => Err(err(offset, "expected a formula, found end of input")),
        }
    }
}

/// Parse a formula from its surface syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.parse_iff()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "unexpected trailing input"));
    }
    Ok(f)
}
