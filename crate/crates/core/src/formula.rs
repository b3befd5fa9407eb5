//! Łukasiewicz terms: parsing, printing and pointwise evaluation.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! formula := "0" | "1" | var | "!" formula | "(" formula op formula ")"
//! op      := "+" | "*" | "&" | "|" | "->"
//! var     := "x" positive-integer
//! ```
//!
//! `+` is truncated addition, `*` the Łukasiewicz product, `&`/`|` are
//! min/max and `->` is implication.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{RPoint, Rational};

/// Largest accepted variable index.
pub const MAX_VARIABLE: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(usize),
    Zero,
    One,
    Neg(Box<Formula>),
    OPlus(Box<Formula>, Box<Formula>),
    OTimes(Box<Formula>, Box<Formula>),
    Min(Box<Formula>, Box<Formula>),
    Max(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    OPlus,
    OTimes,
    Min,
    Max,
    Implies,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::OPlus => "+",
            BinOp::OTimes => "*",
            BinOp::Min => "&",
            BinOp::Max => "|",
            BinOp::Implies => "->",
        }
    }
}

impl Formula {
    pub fn var(i: usize) -> Self {
        Formula::Var(i)
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn binary(op: BinOp, l: Formula, r: Formula) -> Self {
        let (l, r) = (Box::new(l), Box::new(r));
        match op {
            BinOp::OPlus => Formula::OPlus(l, r),
            BinOp::OTimes => Formula::OTimes(l, r),
            BinOp::Min => Formula::Min(l, r),
            BinOp::Max => Formula::Max(l, r),
            BinOp::Implies => Formula::Implies(l, r),
        }
    }

    pub fn oplus(l: Formula, r: Formula) -> Self {
        Self::binary(BinOp::OPlus, l, r)
    }

    /// Splits a binary node into its operator and children.
    pub fn as_binary(&self) -> Option<(BinOp, &Formula, &Formula)> {
        match self {
            Formula::OPlus(l, r) => Some((BinOp::OPlus, l, r)),
            Formula::OTimes(l, r) => Some((BinOp::OTimes, l, r)),
            Formula::Min(l, r) => Some((BinOp::Min, l, r)),
            Formula::Max(l, r) => Some((BinOp::Max, l, r)),
            Formula::Implies(l, r) => Some((BinOp::Implies, l, r)),
            _ => None,
        }
    }

    /// Largest variable index occurring (0 for closed terms).
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Var(i) => *i,
            Formula::Zero | Formula::One => 0,
            Formula::Neg(f) => f.max_var(),
            other => {
                let (_, l, r) = other.as_binary().unwrap();
                l.max_var().max(r.max_var())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Zero | Formula::One => 0,
            Formula::Neg(f) => 1 + f.depth(),
            other => {
                let (_, l, r) = other.as_binary().unwrap();
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn evaluate(&self, v: &RPoint) -> Result<Rational> {
        let need = self.max_var();
        if v.dim() < need {
            return Err(Error::Arity {
                expected: need,
                found: v.dim(),
            });
        }
        if !v.in_unit_cube() {
            return Err(Error::OutsideCube);
        }
        Ok(self.eval_unchecked(v))
    }

    fn eval_unchecked(&self, v: &RPoint) -> Rational {
        let one = Rational::one();
        let zero = Rational::zero();
        match self {
            Formula::Var(i) => v[*i - 1].clone(),
            Formula::Zero => zero,
            Formula::One => one,
            Formula::Neg(f) => one - f.eval_unchecked(v),
            other => {
                let (op, l, r) = other.as_binary().unwrap();
                let a = l.eval_unchecked(v);
                let b = r.eval_unchecked(v);
                match op {
                    BinOp::OPlus => (a + b).min(one),
                    BinOp::OTimes => (a + b - one).max(zero),
                    BinOp::Min => a.min(b),
                    BinOp::Max => a.max(b),
                    BinOp::Implies => (one.clone() - a + b).min(one),
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::Zero => write!(f, "0"),
            Formula::One => write!(f, "1"),
            Formula::Neg(g) => write!(f, "!{g}"),
            other => {
                let (op, l, r) = other.as_binary().unwrap();
                write!(f, "({l} {} {r})", op.symbol())
            }
        }
    }
}

/// Parses a formula. `arity`, when given, bounds the variable indices.
pub fn parse(text: &str, arity: Option<usize>) -> Result<Formula> {
    let mut p = Parser::new(text, arity);
    p.skip_ws();
    let f = p.formula()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected trailing input {c:?}")));
    }
    Ok(f)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    arity: Option<usize>,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, arity: Option<usize>) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            arity,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, message: String) -> Error {
        let (line, column) = self.location(self.pos);
        Error::Syntax {
            line,
            column,
            message,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected {c:?}, found {d:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some('0') => {
                self.pos += 1;
                Ok(Formula::Zero)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Formula::One)
            }
            Some('!') => {
                self.pos += 1;
                Ok(Formula::neg(self.formula()?))
            }
            Some('x') => self.variable(),
            Some('(') => {
                self.pos += 1;
                let l = self.formula()?;
                let op = self.operator()?;
                let r = self.formula()?;
                self.expect(')')?;
                Ok(Formula::binary(op, l, r))
            }
            Some(c) => Err(self.error(format!("unexpected character {c:?}"))),
        }
    }

    fn variable(&mut self) -> Result<Formula> {
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected digits after 'x'".into()));
        }
        let digits: String = self.chars[digits_start..self.pos].iter().collect();
        let index: usize = match digits.parse() {
            Ok(i) if i <= MAX_VARIABLE => i,
            _ => {
                self.pos = start;
                return Err(self.error(format!("variable index x{digits} too large")));
            }
        };
        if index == 0 {
            return Err(Error::ZeroVariable);
        }
        if let Some(n) = self.arity {
            if index > n {
                return Err(Error::Arity {
                    expected: n,
                    found: index,
                });
            }
        }
        Ok(Formula::Var(index))
    }

    fn operator(&mut self) -> Result<BinOp> {
        self.skip_ws();
        let op = match self.peek() {
            Some('+') => BinOp::OPlus,
            Some('*') => BinOp::OTimes,
            Some('&') => BinOp::Min,
            Some('|') => BinOp::Max,
            Some('-') => {
                if self.chars.get(self.pos + 1) == Some(&'>') {
                    self.pos += 1;
                    BinOp::Implies
                } else {
                    return Err(self.error("expected '->'".into()));
                }
            }
            Some(c) => return Err(self.error(format!("expected operator, found {c:?}"))),
            None => return Err(self.error("expected operator, found end of input".into())),
        };
        self.pos += 1;
        Ok(op)
    }
}
