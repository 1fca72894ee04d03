//! Recursive-descent parser and minimal-parenthesis printer for expressions.
//!
//! Precedence from loosest to tightest: `+` (join), `|` (disjoint union),
//! `*` (strong product), postfix `^n`. Binary operators associate to the left.

use std::fmt;

use num_bigint::BigInt;

use super::GraphExpr;
use crate::error::{Error, Result};

const JOIN: u8 = 0;
const UNION: u8 = 1;
const PRODUCT: u8 = 2;
const POWER: u8 = 3;
const ATOM: u8 = 4;

fn level(e: &GraphExpr) -> u8 {
    match e {
        GraphExpr::Join(..) => JOIN,
        GraphExpr::Union(..) => UNION,
        GraphExpr::Product(..) => PRODUCT,
        GraphExpr::Power(..) => POWER,
        GraphExpr::Fraction { .. } | GraphExpr::Generator => ATOM,
    }
}

pub(super) fn write_expr(f: &mut fmt::Formatter<'_>, e: &GraphExpr, min: u8) -> fmt::Result {
    let lvl = level(e);
    let wrap = lvl < min;
    if wrap {
        f.write_str("(")?;
    }
    match e {
        GraphExpr::Fraction { p, q } => write!(f, "F({p}/{q})")?,
        GraphExpr::Generator => f.write_str("g")?,
        GraphExpr::Product(a, b) | GraphExpr::Union(a, b) | GraphExpr::Join(a, b) => {
            let op = match lvl {
                JOIN => " + ",
                UNION => " | ",
                _ => " * ",
            };
            write_expr(f, a, lvl)?;
            f.write_str(op)?;
            write_expr(f, b, lvl + 1)?;
        }
        GraphExpr::Power(a, n) => {
            write_expr(f, a, ATOM)?;
            write!(f, "^{n}")?;
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

pub(super) fn parse_expr(src: &str) -> Result<GraphExpr> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let e = p.join()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..].iter().collect();
        Error::Parse(format!("{msg} at offset {} (remaining: {rest:?})", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn join(&mut self) -> Result<GraphExpr> {
        let mut e = self.union()?;
        while self.eat('+') {
            e = GraphExpr::join(e, self.union()?);
        }
        Ok(e)
    }

    fn union(&mut self) -> Result<GraphExpr> {
        let mut e = self.product()?;
        while self.eat('|') {
            e = GraphExpr::union(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<GraphExpr> {
        let mut e = self.power()?;
        while self.eat('*') {
            e = GraphExpr::product(e, self.power()?);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<GraphExpr> {
        let mut e = self.atom()?;
        while self.eat('^') {
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
            e = GraphExpr::power(e, n).map_err(|_| self.error("exponent must be at least 1"))?;
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<GraphExpr> {
        match self.peek() {
            Some('g') => {
                self.pos += 1;
                Ok(GraphExpr::Generator)
            }
            Some('F') => {
                self.pos += 1;
                self.expect('(')?;
                let p = self.integer()?;
                let q = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
                self.expect(')')?;
                GraphExpr::fraction(p, q).map_err(|e| Error::Parse(e.to_string()))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.join()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error("expected 'g', 'F(p/q)' or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("bad integer"))
    }
}
