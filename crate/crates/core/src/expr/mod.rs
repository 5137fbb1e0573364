//! Textual language for q-series expressions.

mod eval;
mod lexer;
mod parser;
mod poly;
mod texts;

pub use eval::{EvalError, eval};
pub use parser::{ParseError, parse};
pub use poly::ExpPoly;
pub use texts::{Side, canonical_text, canonical_text_by_tag};

use crate::series::{Rational, Sign};

/// Length of a Pochhammer symbol in the language: an index polynomial or the
/// infinite product.
#[derive(Clone, Debug, PartialEq)]
pub enum PochLen {
    Finite(ExpPoly),
    Infinite,
}

/// Abstract syntax for a q-series expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Exact rational literal.
    Rational(Rational),
    /// `q^(e)` with a polynomial exponent in the bound indices.
    QPow(ExpPoly),
    /// `poch(sign, r; m)_(len)`: the symbol `(sign*q^r; q^m)_len`.
    Poch { sign: Sign, arg_exp: ExpPoly, modulus: usize, length: PochLen },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// `base ^ k` with a literal integer exponent (negative inverts).
    IntPow(Box<Expr>, i64),
    /// `base ^ (e)` with a polynomial exponent; the polynomial must evaluate
    /// to an integer at every index assignment.
    PolyPow(Box<Expr>, ExpPoly),
    /// `sum(var = lower .. upper, body)`; `upper = None` means infinity.
    /// Bounds may reference enclosing indices.
    Sum { var: String, lower: ExpPoly, upper: Option<ExpPoly>, body: Box<Expr> },
    /// `bsum(var, body)`: `var` ranges over all integers.
    BSum { var: String, body: Box<Expr> },
}
