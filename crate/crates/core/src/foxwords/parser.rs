//! Recursive-descent parser for words and group-ring elements.
//!
//! Word grammar:
//!
//! ```text
//! word     := factor ( ['*'] factor )*
//! factor   := primary [ '^' integer ]
//! primary  := 'a' | 'a[' integer ']' | 'x' | 'e'
//!           | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `a[i]` abbreviates `x^i a x^-i`, `e` is the empty word, `[u, v]` is
//! `u v u^-1 v^-1`, and `w^k` repeats `w` (or its inverse when `k < 0`)
//! `|k|` times; `w^0` is empty. The `[` of `a[i]` must follow the `a`
//! directly; `a [u, v]` is `a` times a commutator.
//!
//! Group-ring elements are signed sums of terms, each an optional integer
//! coefficient (optionally followed by `*`) and an optional word:
//! `1 - a[0] + 2*a[1]*x^-1`.

use num_bigint::BigInt;

use super::word::{FreeWord, Generator, Letter};
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::ring::ScalarRing;
use crate::wreath::{GroupParams, WreathElement};

/// Exponents beyond this are rejected when expanding to letters.
pub const MAX_EXPANDED_EXPONENT: i64 = 1 << 20;

/// Parsed word syntax, before expansion into letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordExpr {
    Identity,
    Gen(Generator),
    Lamp(i64),
    Product(Vec<WordExpr>),
    Power(Box<WordExpr>, i64),
    Commutator(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn to_word(&self) -> Result<FreeWord> {
        Ok(match self {
            WordExpr::Identity => FreeWord::empty(),
            WordExpr::Gen(g) => FreeWord::generator(*g),
            WordExpr::Lamp(i) => {
                check_expansion(*i)?;
                let xi = FreeWord::generator(Generator::X).pow(*i);
                xi.concat(&FreeWord::generator(Generator::A))
                    .concat(&xi.inverse())
            }
            WordExpr::Product(fs) => {
                let mut letters: Vec<Letter> = Vec::new();
                for f in fs {
                    letters.extend_from_slice(f.to_word()?.letters());
                }
                FreeWord::from_letters(letters)
            }
            WordExpr::Power(base, k) => {
                check_expansion(*k)?;
                base.to_word()?.pow(*k)
            }
            WordExpr::Commutator(u, v) => FreeWord::commutator(&u.to_word()?, &v.to_word()?),
        })
    }

    /// Image in the group, using repeated squaring for powers.
    pub fn evaluate(&self, params: GroupParams) -> WreathElement {
        match self {
            WordExpr::Identity => WreathElement::identity(params),
            WordExpr::Gen(g) => g.image(params),
            WordExpr::Lamp(i) => WreathElement::generator_a(params, *i),
            WordExpr::Product(fs) => fs.iter().fold(WreathElement::identity(params), |acc, f| {
                acc.mul_unchecked(&f.evaluate(params))
            }),
            WordExpr::Power(base, k) => base.evaluate(params).pow(*k),
            WordExpr::Commutator(u, v) => {
                let (u, v) = (u.evaluate(params), v.evaluate(params));
                u.mul_unchecked(&v)
                    .mul_unchecked(&u.inverse())
                    .mul_unchecked(&v.inverse())
            }
        }
    }
}

fn check_expansion(k: i64) -> Result<()> {
    if k.abs() > MAX_EXPANDED_EXPONENT {
        return Err(Error::Parse {
            position: 0,
            message: format!("exponent {k} too large to expand into letters"),
        });
    }
    Ok(())
}

pub fn parse_word(text: &str) -> Result<FreeWord> {
    parse_word_expr(text)?.to_word()
}

pub fn parse_word_expr(text: &str) -> Result<WordExpr> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input, use e for the empty word"));
    }
    let w = p.word()?;
    p.skip_ws();
    p.expect_end()?;
    Ok(w)
}

/// Parses a single group element written as a word, e.g. `a[0]*a[3]*x`.
pub fn parse_group_element(text: &str, params: GroupParams) -> Result<WreathElement> {
    Ok(parse_word_expr(text)?.evaluate(params))
}

pub fn parse_group_ring_element(
    text: &str,
    ring: ScalarRing,
    params: GroupParams,
) -> Result<GroupRingElement> {
    let mut p = Parser::new(text);
    let mut terms: Vec<(WreathElement, BigInt)> = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input, use 0 for the zero element"));
    }
    let mut negative = false;
    if let Some(c @ ('+' | '-')) = p.peek() {
        negative = c == '-';
        p.bump();
        p.skip_ws();
    }
    loop {
        let (coeff, word) = p.term()?;
        let coeff = if negative { -coeff } else { coeff };
        let g = word.map_or_else(|| WreathElement::identity(params), |w| w.evaluate(params));
        terms.push((g, coeff));
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(c @ ('+' | '-')) => {
                negative = c == '-';
                p.bump();
                p.skip_ws();
            }
            Some(c) => return Err(p.error(&format!("unexpected {c:?}, expected + or -"))),
        }
    }
    Ok(GroupRingElement::from_terms(ring, params, terms))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(&format!("unexpected {c:?}"))),
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some('a' | 'x' | 'e' | '(' | '['))
    }

    fn word(&mut self) -> Result<WordExpr> {
        let mut factors = vec![self.factor()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                factors.push(self.factor()?);
            } else if self.starts_primary() {
                factors.push(self.factor()?);
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            WordExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<WordExpr> {
        let base = self.primary()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let k = self.integer()?;
            let k = i64::try_from(k).map_err(|_| self.error("exponent out of range"))?;
            Ok(WordExpr::Power(Box::new(base), k))
        } else {
            self.pos = save;
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<WordExpr> {
        match self.peek() {
            Some('a') => {
                self.bump();
                if self.peek() == Some('[') {
                    self.bump();
                    self.skip_ws();
                    let i = self.integer()?;
                    let i = i64::try_from(i).map_err(|_| self.error("lamp index out of range"))?;
                    self.skip_ws();
                    self.expect(']')?;
                    Ok(WordExpr::Lamp(i))
                } else {
                    Ok(WordExpr::Gen(Generator::A))
                }
            }
            Some('x') => {
                self.bump();
                Ok(WordExpr::Gen(Generator::X))
            }
            Some('e') => {
                self.bump();
                Ok(WordExpr::Identity)
            }
            Some('(') => {
                self.bump();
                self.skip_ws();
                let w = self.word()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                self.skip_ws();
                let u = self.word()?;
                self.skip_ws();
                self.expect(',')?;
                self.skip_ws();
                let v = self.word()?;
                self.skip_ws();
                self.expect(']')?;
                Ok(WordExpr::Commutator(Box::new(u), Box::new(v)))
            }
            Some(c) => Err(self.error(&format!("unexpected {c:?}, expected a, x, e, ( or ["))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Optionally signed decimal integer.
    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("validated digits"))
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.integer()
        } else {
            Err(self.error("expected an integer"))
        }
    }

    /// One summand: `[coeff ['*']] [word]`, at least one part present.
    fn term(&mut self) -> Result<(BigInt, Option<WordExpr>)> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.unsigned()?;
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                return Ok((c, Some(self.word()?)));
            }
            if self.starts_primary() {
                return Ok((c, Some(self.word()?)));
            }
            self.pos = save;
            Ok((c, None))
        } else if self.starts_primary() {
            Ok((BigInt::from(1), Some(self.word()?)))
        } else {
            match self.peek() {
                Some(c) => Err(self.error(&format!("unexpected {c:?}, expected a term"))),
                None => Err(self.error("unexpected end of input, expected a term")),
            }
        }
    }
}
