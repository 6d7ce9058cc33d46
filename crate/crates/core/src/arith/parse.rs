//! Text form of rational expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER | IDENT | "(" expr ")"
//! ```
//!
//! Printing emits terms in descending graded-lex order and only the
//! parentheses the grammar needs.

use std::fmt::Write;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive};

use super::expr::RationalExpr;
use super::poly::Polynomial;
use super::space::{is_identifier, Space};
use super::{ArithError, Integer, ParseError, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(Integer),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Token::Int(text.parse().expect("digits parse"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Token::Ident(text)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Token::Op(c)));
            i += 1;
        } else {
            return Err(ParseError::new(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    space: &'a Arc<Space>,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn arith(&self, r: Result<RationalExpr, ArithError>) -> Result<RationalExpr, ParseError> {
        r.map_err(|e| ParseError::new(self.offset(), e.to_string()))
    }

    fn expr(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                let rhs = self.term()?;
                acc = self.arith(acc.add(&rhs))?;
            } else if self.eat_op('-') {
                let rhs = self.term()?;
                acc = self.arith(acc.sub(&rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                let rhs = self.unary()?;
                acc = self.arith(acc.mul(&rhs))?;
            } else if self.eat_op('/') {
                let at = self.offset();
                let rhs = self.unary()?;
                acc = acc
                    .div(&rhs)
                    .map_err(|e| ParseError::new(at, e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr, ParseError> {
        if self.eat_op('-') {
            Ok(self.unary()?.neg())
        } else if self.eat_op('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalExpr, ParseError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let e = n
                    .to_u32()
                    .filter(|&e| e <= 255)
                    .ok_or_else(|| ParseError::new(at, "exponent too large".to_string()))?;
                self.arith(base.pow(e))
            }
            _ => Err(ParseError::new(
                at,
                "exponent must be a nonnegative integer literal".to_string(),
            )),
        }
    }

    fn atom(&mut self) -> Result<RationalExpr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(RationalExpr::constant(self.space, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                RationalExpr::param(self.space, &name).map_err(|_| ParseError {
                    offset: at,
                    message: format!("unknown parameter '{name}'"),
                    unknown_parameter: Some(name),
                })
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(ParseError::new(self.offset(), "expected ')'".to_string()));
                }
                Ok(inner)
            }
            Some(Token::Op(c)) => Err(ParseError::new(at, format!("unexpected '{c}'"))),
            None => Err(ParseError::new(at, "unexpected end of expression".to_string())),
        }
    }
}

impl Space {
    /// Parses an expression over this parameter list.
    pub fn parse(self: &Arc<Self>, src: &str) -> Result<RationalExpr, ParseError> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            space: self,
            tokens,
            pos: 0,
            end: src.len(),
        };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(ParseError::new(p.offset(), "unexpected trailing input".to_string()));
        }
        Ok(e)
    }
}

fn coefficient(out: &mut String, c: &Rational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

pub(crate) fn print_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let space = p.space();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let mag = c.abs();
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        for (slot, &e) in m.exponents().iter().enumerate().take(space.len()) {
            match e {
                0 => {}
                1 => factors.push(space.name(slot).to_string()),
                _ => factors.push(format!("{}^{}", space.name(slot), e)),
            }
        }
        if factors.is_empty() {
            coefficient(&mut out, &mag);
        } else {
            if !mag.is_one() {
                coefficient(&mut out, &mag);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Whether `p` prints as one factor that `x / p` does not split.
fn is_atomic_divisor(p: &Polynomial) -> bool {
    match p.terms() {
        [(m, c)] => {
            let vars = m.exponents().iter().filter(|&&e| e > 0).count();
            (vars == 0 && c.is_integer() && !c.is_negative()) || (vars == 1 && c.is_one())
        }
        _ => false,
    }
}

pub(crate) fn print_expr(e: &RationalExpr) -> String {
    let num = print_polynomial(e.num());
    if e.den().is_one() {
        return num;
    }
    let num = if e.num().num_terms() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = print_polynomial(e.den());
    if is_atomic_divisor(e.den()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// Whether `s` is a valid parameter identifier.
pub fn valid_identifier(s: &str) -> bool {
    is_identifier(s)
}
