use std::fmt;

use thiserror::Error;

use super::{Formula, KEYWORDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Box,
    Diamond,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Box => f.write_str("`box`"),
            Tok::Diamond => f.write_str("`<>`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'.' => Tok::Dot,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Diamond
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &input[start..=i];
                if word == "box" {
                    Tok::Box
                } else {
                    Tok::Ident(word.to_string())
                }
            }
            _ => {
                let found = input[start..].chars().next().unwrap_or(' ');
                return Err(ParseError {
                    pos: start,
                    expected: "a formula token".into(),
                    found: format!("character `{found}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            pos: self.pos(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(what)),
        }
    }

    // implication: right associative, loosest
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::settled(self.unary()?))
            }
            Tok::Diamond => {
                self.bump();
                Ok(Formula::possible(self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let agent = self.name("an agent name")?;
                self.expect(Tok::RBracket)?;
                Ok(Formula::stit(agent, self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(word) => {
                let op: Option<fn(String, Formula) -> Formula> = match word.as_str() {
                    "K" => Some(Formula::know),
                    "I" => Some(Formula::intend),
                    "Ob" => Some(Formula::ought),
                    "Os" => Some(Formula::subj_ought),
                    _ => None,
                };
                self.bump();
                match op {
                    Some(op) => {
                        let agent = self.name("an agent name")?;
                        self.expect(Tok::Dot)?;
                        Ok(op(agent, self.unary()?))
                    }
                    None => Ok(Formula::Atom(word)),
                }
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses the ASCII concrete syntax.
///
/// Precedence from tightest to loosest: the unary operators (`~`, `box`,
/// `<>`, `[a]`, `K a.`, `I a.`, `Ob a.`, `Os a.`), then `&`, `|`, `->`.
/// `&` and `|` associate to the left, `->` to the right.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}
