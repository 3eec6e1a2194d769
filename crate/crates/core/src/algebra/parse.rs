//! Parsing of polynomial expressions such as `2*x + x^2 - (t*x)^3` into a jet ring.

use std::sync::Arc;

use super::series::{Series, TruncatedLocalRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(u128),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut v: u128 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u128))
                    .ok_or_else(|| Error::InvalidInput(format!("number too large in {text:?}")))?;
                chars.next();
            }
            out.push(Token::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
            }
            out.push(Token::Ident(s));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            chars.next();
        } else {
            return Err(Error::InvalidInput(format!("unexpected {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<TruncatedLocalRing>,
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail(&self, what: &str) -> Error {
        Error::InvalidInput(format!("{what} at token {} of {:?}", self.pos + 1, self.text))
    }

    fn expr(&mut self) -> Result<Series> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Series> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| self.fail("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.fail("expected an exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Series> {
        match self.peek().cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                let p = self.ring.field().modulus() as u128;
                Ok(Series::constant(self.ring, (v % p) as u64))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?} in {:?}", self.text)))?;
                Ok(Series::var(self.ring, i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.fail("expected ')'"));
                }
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            _ => Err(self.fail("expected a number, variable or '('")),
        }
    }
}

/// Parses `text` as a polynomial in the variables of `ring`, truncating as it goes.
pub fn parse_series(ring: &Arc<TruncatedLocalRing>, text: &str) -> Result<Series> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::InvalidInput("empty expression".into()));
    }
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        text,
    };
    let s = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.fail("trailing input"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    fn ring() -> Arc<TruncatedLocalRing> {
        TruncatedLocalRing::new(PrimeField::new(7).unwrap(), vec!["t".into(), "x".into()], 4).unwrap()
    }

    #[test]
    fn parses_expressions() {
        let r = ring();
        let s = parse_series(&r, "2*x + x^2 - 3").unwrap();
        assert_eq!(s.to_terms(), vec![(vec![0, 0], 4), (vec![0, 1], 2), (vec![0, 2], 1)]);
        let s = parse_series(&r, "-(t + x)^2").unwrap();
        assert_eq!(s.to_terms(), vec![(vec![2, 0], 6), (vec![1, 1], 5), (vec![0, 2], 6)]);
        // above the truncation
        assert!(parse_series(&r, "t^5").unwrap().is_zero());
        assert_eq!(parse_series(&r, "15*t").unwrap().to_terms(), vec![(vec![1, 0], 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring();
        for bad in ["", "y", "x +", "(x", "x^", "x $ t", "x^t", "x x"] {
            assert!(matches!(parse_series(&r, bad), Err(Error::InvalidInput(_))), "{bad}");
        }
    }
}
