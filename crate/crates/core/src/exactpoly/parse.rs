//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' uint]
//! atom   := uint ['/' uint] | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! The tokenizer also recognises `d/dx` and `d/dy` so the derivation parser
//! can reuse it.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{BiPoly, PolyError, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Num(BigInt),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
    X,
    Y,
    Dx,
    Dy,
}

pub(crate) struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = s.as_bytes();
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
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Num(s[start..i].parse().expect("digits"))));
                continue;
            }
            b'd' if s[i..].starts_with("d/dx") => {
                i += 4;
                out.push((start, Token::Dx));
                continue;
            }
            b'd' if s[i..].starts_with("d/dy") => {
                i += 4;
                out.push((start, Token::Dy));
                continue;
            }
            b'/' => Token::Slash,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'x' => Token::X,
            b'y' => Token::Y,
            _ => {
                return Err(PolyError::Parse {
                    pos: i,
                    msg: format!("unexpected character {:?}", c as char),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

impl Parser {
    pub(crate) fn new(s: &str) -> Result<Self, PolyError> {
        Ok(Parser {
            tokens: tokenize(s)?,
            pos: 0,
            len: s.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> PolyError {
        let pos = self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len);
        PolyError::Parse { pos, msg: msg.into() }
    }

    fn expect(&mut self, t: Token) -> Result<(), PolyError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {t:?}")))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<BiPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    pub(crate) fn term(&mut self) -> Result<BiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, PolyError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Token::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| self.error("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected a nonnegative integer exponent"));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly, PolyError> {
        match self.bump() {
            Some(Token::Num(n)) => {
                let mut den = BigInt::one();
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Token::Num(d)) if d != BigInt::from(0) => den = d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected a nonzero denominator"));
                        }
                    }
                }
                Ok(BiPoly::constant(Rat::new(n, den)))
            }
            Some(Token::X) => Ok(BiPoly::x()),
            Some(Token::Y) => Ok(BiPoly::y()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, a variable or '('"))
            }
        }
    }
}

pub(crate) fn parse_poly(s: &str) -> Result<BiPoly, PolyError> {
    let mut p = Parser::new(s)?;
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    let out = p.expr()?;
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat_frac;

    #[test]
    fn parses_general_expressions() {
        let p = parse_poly("(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let q = parse_poly("-3/6*x*-y").unwrap();
        assert_eq!(q.to_string(), "1/2*x*y");
        assert_eq!(parse_poly("2/4").unwrap(), BiPoly::constant(rat_frac(1, 2)));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("x/2").is_err());
        assert!(parse_poly("3/0").is_err());
        assert!(parse_poly("z").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("x y").is_err());
    }
}
