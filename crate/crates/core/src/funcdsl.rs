//! A small expression language for real test functions of `x`, used in CLI
//! configs: `x^0.5*exp(-x)`, `pow(x, 2) / (1 + x)`, ...
//!
//! Grammar (whitespace insensitive; `−` may be written as ASCII `-` or U+2212):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | ident | ident "(" expr ("," expr)? ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2` is
//! `-(x^2)` and `2^-x` is allowed. Identifiers: `x`, `pi`, `e`, and the
//! functions `exp`, `log`, `sin`, `cos`, `sqrt`, `pow`.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::mellin::{DecayHint, RadialFunction};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Character offsets `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    X,
    Pi,
    E,
    Neg(Box<FunctionExpr>),
    Binary(BinOp, Box<FunctionExpr>, Box<FunctionExpr>),
    Call(Func, Box<FunctionExpr>),
    /// `pow(a, b)`; kept apart from `a ^ b` so that printing round-trips.
    PowCall(Box<FunctionExpr>, Box<FunctionExpr>),
}

/// A parsed expression. Equality compares structure only, not spans.
#[derive(Debug, Clone)]
pub struct FunctionExpr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for FunctionExpr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprError {
    Syntax {
        offset: usize,
        expected: &'static str,
    },
    UnknownIdentifier {
        offset: usize,
        name: String,
    },
    Arity {
        offset: usize,
        name: &'static str,
        expected: usize,
        found: usize,
    },
    /// Evaluation left the domain of an operation (log or sqrt of a negative,
    /// division by zero, overflow); `span` locates the subexpression.
    Domain {
        span: Span,
        what: &'static str,
        value: f64,
    },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { offset, expected } => write!(f, "syntax error at offset {offset}: expected {expected}"),
            ExprError::UnknownIdentifier { offset, name } => write!(f, "unknown identifier `{name}` at offset {offset}"),
            ExprError::Arity { offset, name, expected, found } => {
                write!(f, "`{name}` at offset {offset} takes {expected} argument(s), got {found}")
            }
            ExprError::Domain { span, what, value } => {
                write!(f, "domain error in subexpression at {}..{}: {what} (got {value})", span.start, span.end)
            }
        }
    }
}

struct Parser {
    chars: alloc::vec::Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
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

    fn eat_minus(&mut self) -> bool {
        self.eat('-') || self.eat('\u{2212}')
    }

    fn err(&self, expected: &'static str) -> ExprError {
        ExprError::Syntax { offset: self.pos, expected }
    }

    fn node(kind: ExprKind, start: usize, end: usize) -> FunctionExpr {
        FunctionExpr { kind, span: Span { start, end } }
    }

    fn binary(op: BinOp, l: FunctionExpr, r: FunctionExpr) -> FunctionExpr {
        let span = Span { start: l.span.start, end: r.span.end };
        FunctionExpr { kind: ExprKind::Binary(op, Box::new(l), Box::new(r)), span }
    }

    fn expr(&mut self) -> Result<FunctionExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat_minus() {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Self::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<FunctionExpr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Self::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<FunctionExpr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat_minus() {
            let inner = self.unary()?;
            let end = inner.span.end;
            return Ok(Self::node(ExprKind::Neg(Box::new(inner)), start, end));
        }
        self.power()
    }

    fn power(&mut self) -> Result<FunctionExpr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            return Ok(Self::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FunctionExpr, ExprError> {
        let start = match self.peek() {
            None => return Err(self.err("expression")),
            Some(_) => self.pos,
        };
        let c = self.chars[start];
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("`)`"));
            }
            return Ok(FunctionExpr { kind: inner.kind, span: Span { start, end: self.pos } });
        }
        if c.is_ascii_digit() || c == '.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            return self.ident(start);
        }
        Err(self.err("expression"))
    }

    fn number(&mut self, start: usize) -> Result<FunctionExpr, ExprError> {
        let digits = |p: &mut Parser| {
            let s = p.pos;
            while p.pos < p.chars.len() && p.chars[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.err("digits"));
        }
        // exponent only when followed by digits, so that `2e` is not swallowed
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Self::node(ExprKind::Number(v), start, self.pos)),
            _ => {
                self.pos = start;
                Err(self.err("finite number"))
            }
        }
    }

    fn ident(&mut self, start: usize) -> Result<FunctionExpr, ExprError> {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let end = self.pos;
        if self.peek() != Some('(') {
            let kind = match name.as_str() {
                "x" => ExprKind::X,
                "pi" => ExprKind::Pi,
                "e" => ExprKind::E,
                _ => return Err(ExprError::UnknownIdentifier { offset: start, name }),
            };
            return Ok(Self::node(kind, start, end));
        }
        let func = match name.as_str() {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sqrt" => Some(Func::Sqrt),
            "pow" => None,
            _ => return Err(ExprError::UnknownIdentifier { offset: start, name }),
        };
        self.pos += 1; // '('
        let first = self.expr()?;
        let second = if self.eat(',') { Some(self.expr()?) } else { None };
        if !self.eat(')') {
            return Err(self.err(if second.is_some() { "`)`" } else { "`,` or `)`" }));
        }
        let span_end = self.pos;
        let kind = match (func, second) {
            (Some(f), None) => ExprKind::Call(f, Box::new(first)),
            (None, Some(b)) => ExprKind::PowCall(Box::new(first), Box::new(b)),
            (Some(f), Some(_)) => return Err(ExprError::Arity { offset: start, name: f.name(), expected: 1, found: 2 }),
            (None, None) => return Err(ExprError::Arity { offset: start, name: "pow", expected: 2, found: 1 }),
        };
        Ok(Self::node(kind, start, span_end))
    }
}

/// Parse an expression; errors carry character offsets.
pub fn parse_expr(text: &str) -> Result<FunctionExpr, ExprError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("operator or end of input"));
    }
    Ok(e)
}

fn checked(v: f64, span: Span, what: &'static str, arg: f64) -> Result<f64, ExprError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::Domain { span, what, value: arg })
    }
}

/// Evaluate at `x`. Any non-finite intermediate is a domain error located at
/// the offending subexpression.
pub fn eval_expr(expr: &FunctionExpr, x: f64) -> Result<f64, ExprError> {
    let span = expr.span;
    match &expr.kind {
        ExprKind::Number(v) => Ok(*v),
        ExprKind::X => Ok(x),
        ExprKind::Pi => Ok(core::f64::consts::PI),
        ExprKind::E => Ok(core::f64::consts::E),
        ExprKind::Neg(a) => Ok(-eval_expr(a, x)?),
        ExprKind::Binary(op, a, b) => {
            let (u, v) = (eval_expr(a, x)?, eval_expr(b, x)?);
            match op {
                BinOp::Add => checked(u + v, span, "overflow in sum", u),
                BinOp::Sub => checked(u - v, span, "overflow in difference", u),
                BinOp::Mul => checked(u * v, span, "overflow in product", u),
                BinOp::Div if v == 0.0 => Err(ExprError::Domain { span, what: "division by zero", value: v }),
                BinOp::Div => checked(u / v, span, "overflow in quotient", u),
                BinOp::Pow => power(u, v, span),
            }
        }
        ExprKind::PowCall(a, b) => power(eval_expr(a, x)?, eval_expr(b, x)?, span),
        ExprKind::Call(f, a) => {
            let u = eval_expr(a, x)?;
            match f {
                Func::Exp => checked(u.exp(), span, "exp overflow", u),
                Func::Log if u <= 0.0 => Err(ExprError::Domain { span, what: "log of a non-positive value", value: u }),
                Func::Log => Ok(u.ln()),
                Func::Sin => Ok(u.sin()),
                Func::Cos => Ok(u.cos()),
                Func::Sqrt if u < 0.0 => Err(ExprError::Domain { span, what: "sqrt of a negative value", value: u }),
                Func::Sqrt => Ok(u.sqrt()),
            }
        }
    }
}

fn power(u: f64, v: f64, span: Span) -> Result<f64, ExprError> {
    if u < 0.0 && v.fract() != 0.0 {
        return Err(ExprError::Domain { span, what: "negative base with non-integer exponent", value: u });
    }
    if u == 0.0 && v < 0.0 {
        return Err(ExprError::Domain { span, what: "zero to a negative power", value: v });
    }
    checked(u.powf(v), span, "overflow in power", u)
}

impl FunctionExpr {
    /// Binding strength used by the printer: sums 1, products 2, negation 3,
    /// powers 4, atoms 5.
    fn strength(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprKind::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.strength() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match &self.kind {
            ExprKind::Number(v) => write!(f, "{v}"),
            ExprKind::X => write!(f, "x"),
            ExprKind::Pi => write!(f, "pi"),
            ExprKind::E => write!(f, "e"),
            ExprKind::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            ExprKind::Binary(op, a, b) => {
                let (sym, l, r) = match op {
                    BinOp::Add => (" + ", 1, 2),
                    BinOp::Sub => (" - ", 1, 2),
                    BinOp::Mul => (" * ", 2, 3),
                    BinOp::Div => (" / ", 2, 3),
                    BinOp::Pow => ("^", 5, 3),
                };
                a.write_at(f, l)?;
                write!(f, "{sym}")?;
                b.write_at(f, r)
            }
            ExprKind::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write_at(f, 0)?;
                write!(f, ")")
            }
            ExprKind::PowCall(a, b) => {
                write!(f, "pow(")?;
                a.write_at(f, 0)?;
                write!(f, ", ")?;
                b.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }

    /// Wrap as a [`RadialFunction`]; points where evaluation fails give NaN,
    /// which the integrators report as a non-finite integrand.
    pub fn to_radial(&self, decay: DecayHint) -> RadialFunction {
        let e = self.clone();
        RadialFunction::new(move |x| eval_expr(&e, x).unwrap_or(f64::NAN), decay)
    }
}

impl fmt::Display for FunctionExpr {
    /// Minimal parentheses; the output parses back to an equal tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl core::str::FromStr for FunctionExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_expr(s)
    }
}
