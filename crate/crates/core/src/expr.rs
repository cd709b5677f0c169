//! Text syntax for domains.
//!
//! ```text
//! domain := factor ( ("x" | "*") factor )*
//! factor := "I(" int "," int ")" | "II(" int ")" | "III(" int ")"
//!         | "IV(" int ")" | "V" | "VI" | "Ball(" int ")"
//! ```
//!
//! Whitespace is ignored everywhere. `Ball(n)` is the unit ball in `C^n`,
//! i.e. `I(n,1)`. Printing a [`Domain`] with `Display` yields text this
//! parser accepts and maps back to the same domain.

use std::fmt;

use thiserror::Error;

use crate::cartan::{make_factor, CartanError, CartanFactor, Family};
use crate::domain::{product, Domain, DomainError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        /// Byte offset into the original text.
        position: usize,
        expected: Vec<&'static str>,
        found: Found,
    },
    #[error(transparent)]
    Range(#[from] CartanError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Found {
    Char(char),
    End,
}

impl fmt::Display for Found {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Found::Char(c) => write!(f, "'{c}'"),
            Found::End => f.write_str("end of input"),
        }
    }
}

// Longest keywords first so that "III" is not read as "II" followed by junk.
const KEYWORDS: [(&str, Keyword); 7] = [
    ("Ball", Keyword::Ball),
    ("III", Keyword::Family(Family::III)),
    ("II", Keyword::Family(Family::II)),
    ("IV", Keyword::Family(Family::IV)),
    ("I", Keyword::Family(Family::I)),
    ("VI", Keyword::Family(Family::VI)),
    ("V", Keyword::Family(Family::V)),
];

const FACTOR_START: &[&str] = &["I(", "II(", "III(", "IV(", "V", "VI", "Ball("];

#[derive(Debug, Clone, Copy)]
enum Keyword {
    Ball,
    Family(Family),
}

struct Parser {
    // (byte offset in the source, char) with whitespace removed
    chars: Vec<(usize, char)>,
    pos: usize,
    source_len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            source_len: text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (position, found) = match self.chars.get(self.pos) {
            Some(&(off, c)) => (off, Found::Char(c)),
            None => (self.source_len, Found::End),
        };
        ParseError::Syntax {
            position,
            expected: expected.to_vec(),
            found,
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.chars.len()
    }

    fn starts_with(&self, word: &str) -> bool {
        let mut i = self.pos;
        for c in word.chars() {
            match self.chars.get(i) {
                Some(&(_, d)) if d == c => i += 1,
                _ => return false,
            }
        }
        true
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut overflow = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            match value.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => value = v,
                None => overflow = true,
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(&["integer"]));
        }
        if overflow {
            return Err(CartanError::ParameterTooLarge { value: u64::MAX }.into());
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<CartanFactor, ParseError> {
        let (word, keyword) = KEYWORDS
            .iter()
            .find(|(word, _)| self.starts_with(word))
            .copied()
            .ok_or_else(|| self.error(FACTOR_START))?;
        self.pos += word.chars().count();
        let family = match keyword {
            Keyword::Ball => {
                self.expect('(', "'('")?;
                let n = self.int()?;
                self.expect(')', "')'")?;
                return Ok(CartanFactor::ball(n)?);
            }
            Keyword::Family(f) => f,
        };
        let mut params = Vec::with_capacity(family.arity());
        if family.arity() > 0 {
            self.expect('(', "'('")?;
            for i in 0..family.arity() {
                if i > 0 {
                    self.expect(',', "','")?;
                }
                params.push(self.int()?);
            }
            self.expect(')', "')'")?;
        }
        Ok(make_factor(family, &params)?)
    }

    fn domain(&mut self) -> Result<Domain, ParseError> {
        let mut factors = vec![self.factor()?];
        while !self.at_end() {
            match self.peek() {
                Some('x') | Some('*') => self.pos += 1,
                _ => return Err(self.error(&["'x'", "'*'", "end of input"])),
            }
            factors.push(self.factor()?);
        }
        Ok(product(factors)?)
    }
}

pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    Parser::new(text).domain()
}

pub fn parse_factor(text: &str) -> Result<CartanFactor, ParseError> {
    let mut parser = Parser::new(text);
    let f = parser.factor()?;
    if !parser.at_end() {
        return Err(parser.error(&["end of input"]));
    }
    Ok(f)
}
