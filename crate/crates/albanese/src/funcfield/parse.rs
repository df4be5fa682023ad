//! Minimal arithmetic grammar over `t`:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*     // juxtaposition multiplies
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' '-'? integer)?
//! primary := integer | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::rat::Rat;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    T,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            't' => {
                chars.next();
                out.push(Token::T);
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                out.push(Token::Op(c));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
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

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = (&acc / &self.unary()?)?;
            } else if matches!(self.peek(), Some(Token::Int(_) | Token::T | Token::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let e: i64 = n
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                base.pow(if neg { -e } else { e })
            }
            _ => Err(Error::Parse("expected integer exponent".into())),
        }
    }

    fn primary(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rat::from_integer(n)))
            }
            Some(Token::T) => {
                self.pos += 1;
                Ok(RatFunc::t())
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(tok) => Err(Error::Parse(format!("unexpected token {tok:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses an expression such as `(t-1)(t-4)/(t-2)^2` or `3/2*t^-1`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    let f = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in `{src}`",
            p.pos
        )));
    }
    Ok(f)
}
