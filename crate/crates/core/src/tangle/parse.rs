//! Recursive descent parser for tangle words.
//!
//! ```text
//! word    ::= atom ("*" atom)*          left associative
//! atom    ::= INT | "rt(" word ")" | "(" word ")"
//! ```
//!
//! Columns in errors are 1-based character positions.

use super::word::TangleWord;
use crate::error::{Error, Result};

impl std::str::FromStr for TangleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<TangleWord> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<TangleWord> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                return Ok(acc);
            }
            self.pos += 1;
            let rhs = self.atom()?;
            acc = TangleWord::vcomp(acc, rhs);
        }
    }

    fn atom(&mut self) -> Result<TangleWord> {
        self.skip_ws();
        match self.peek() {
            Some('r') => {
                if self.chars[self.pos..].starts_with(&['r', 't']) {
                    self.pos += 2;
                    self.expect('(')?;
                    let inner = self.word()?;
                    self.expect(')')?;
                    Ok(TangleWord::rot(inner))
                } else {
                    Err(self.error("expected 'rt('"))
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c == '-' || c == '\u{2212}' || c.is_ascii_digit() => self.integer(),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<TangleWord> {
        let start = self.pos;
        let neg = matches!(self.peek(), Some('-' | '\u{2212}'));
        if neg {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected digits"));
        }
        let digits: String = self.chars[digits_start..self.pos].iter().collect();
        let m: i64 = digits.parse().map_err(|_| Error::Syntax {
            pos: start + 1,
            msg: "integer out of range".into(),
        })?;
        Ok(TangleWord::integral(if neg { -m } else { m }))
    }
}
