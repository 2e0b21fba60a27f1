//! ASCII formula syntax.
//!
//! Precedence, tightest first: `~`, `&`, `(+)`, `|`, `->` (right-associative),
//! `<->`. The binary operators other than `->` associate to the left.

use super::{Formula, LogicError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    And,
    Or,
    Tensor,
    Imp,
    Iff,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| LogicError::Syntax { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'~' => {
                out.push((i, Tok::Not));
                i += 1;
            }
            b'&' => {
                out.push((i, Tok::And));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Or));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'(' => {
                if bytes[i..].starts_with(b"(+)") {
                    out.push((i, Tok::Tensor));
                    i += 3;
                } else {
                    out.push((i, Tok::LParen));
                    i += 1;
                }
            }
            b'-' => {
                if bytes[i..].starts_with(b"->") {
                    out.push((i, Tok::Imp));
                    i += 2;
                } else {
                    return Err(err(i, "expected `->`"));
                }
            }
            b'<' => {
                if bytes[i..].starts_with(b"<->") {
                    out.push((i, Tok::Iff));
                    i += 3;
                } else {
                    return Err(err(i, "expected `<->`"));
                }
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
            }
            _ => return Err(err(i, &format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')))),
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
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.imp()?;
        while self.eat(&Tok::Iff) {
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula, LogicError> {
        let left = self.or()?;
        if self.eat(&Tok::Imp) {
            let right = self.imp()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.tensor()?;
        while self.eat(&Tok::Or) {
            left = Formula::or(left, self.tensor()?);
        }
        Ok(left)
    }

    fn tensor(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.and()?;
        while self.eat(&Tok::Tensor) {
            left = Formula::tensor(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        let at = self.offset();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(LogicError::Syntax { pos: self.offset(), msg: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some(_) => Err(LogicError::Syntax { pos: at, msg: "expected a formula".into() }),
            None => Err(LogicError::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses one formula.
pub fn parse(text: &str) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return Err(LogicError::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(f)
}

/// Parses one formula per non-empty line; lines starting with `#` are skipped.
pub fn parse_lines(text: &str) -> Result<Vec<Formula>, LogicError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse)
        .collect()
}

const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const TENSOR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Implies(a, b), Formula::Implies(b2, a2)) = (l.as_ref(), r.as_ref()) {
            if a == a2 && b == b2 {
                return Some((a, b));
            }
        }
    }
    None
}

fn write(f: &Formula, ctx: u8, out: &mut String) {
    let wrap = |level: u8, out: &mut String, body: &mut dyn FnMut(&mut String)| {
        if ctx > level {
            out.push('(');
            body(out);
            out.push(')');
        } else {
            body(out);
        }
    };
    if let Some((a, b)) = as_iff(f) {
        wrap(IFF, out, &mut |out| {
            write(a, IFF, out);
            out.push_str(" <-> ");
            write(b, IMP, out);
        });
        return;
    }
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::Bot => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Implies(a, b) if **b == Formula::Bot => {
            out.push('~');
            write(a, UNARY, out);
        }
        Formula::Implies(a, b) => wrap(IMP, out, &mut |out| {
            write(a, OR, out);
            out.push_str(" -> ");
            write(b, IMP, out);
        }),
        Formula::Or(a, b) => wrap(OR, out, &mut |out| {
            write(a, OR, out);
            out.push_str(" | ");
            write(b, TENSOR, out);
        }),
        Formula::Tensor(a, b) => wrap(TENSOR, out, &mut |out| {
            write(a, TENSOR, out);
            out.push_str(" (+) ");
            write(b, AND, out);
        }),
        Formula::And(a, b) => wrap(AND, out, &mut |out| {
            write(a, AND, out);
            out.push_str(" & ");
            write(b, UNARY, out);
        }),
    }
}

/// Minimal-parenthesis rendering; `parse(format_formula(f)) == f`.
pub fn format_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IFF, &mut out);
    out
}
