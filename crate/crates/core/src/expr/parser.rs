//! Recursive-descent parser for the expression language.
//!
//! Grammar (whitespace insignificant, ASCII only):
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := "-" factor | atom ("^" exponent)?
//! exponent := ["-"] integer | "(" exppoly ")"
//! atom   := rational | qpow | poch | sum | bsum | "(" expr ")"
//! qpow   := "q" ("^" ("(" exppoly ")" | integer))?
//! poch   := "poch" "(" ("1"|"-1") "," exppoly ";" integer ")" "_"
//!           ("(" exppoly ")" | "inf")
//! sum    := "sum" "(" ident "=" exppoly ".." (exppoly | "inf") "," expr ")"
//! bsum   := "bsum" "(" ident "," expr ")"
//! rational := integer ("/" positive-integer)?   (unless followed by "^")
//! ```
//!
//! Standard precedence: unary minus, then `^`, then `*` `/`, then `+` `-`;
//! `a-b-c` groups left-associatively. A rational literal `p/k` never
//! swallows the divisor of `p/k^e`, so `1/2^n` means `1/(2^n)`.

use std::fmt;

use super::lexer::{Token, TokenKind, tokenize};
use super::poly::ExpPoly;
use super::{Expr, PochLen};
use crate::series::{Rational, Sign, rat};

/// Syntax error with the byte position it was detected at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
    /// Short summary of what would have been acceptable here.
    pub expected: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)?;
        if let Some(e) = &self.expected {
            write!(f, " (expected {e})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Parse a complete expression; trailing input is an error.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expr()?;
    p.expect(TokenKind::Eof)?;
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, ahead: usize) -> &Token {
        &self.tokens[(self.pos + ahead).min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: Option<&str>) -> ParseError {
        ParseError {
            position: self.peek().position,
            message: message.into(),
            expected: expected.map(str::to_string),
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error(
                format!("found {}", self.peek().kind.describe()),
                Some(&kind.describe()),
            ))
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().kind == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_int(&mut self) -> Result<i64, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.advance();
                Ok(n)
            }
            other => {
                Err(self.error(format!("found {}", other.describe()), Some("an integer")))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(TokenKind::Plus) {
                let rhs = self.term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(TokenKind::Minus) {
                let rhs = self.term()?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(TokenKind::Star) {
                let rhs = self.factor()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(TokenKind::Slash) {
                let rhs = self.factor()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(TokenKind::Minus) {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let atom = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            // `q^...` is part of the qpow atom and never reaches here.
            self.advance();
            if self.eat(TokenKind::LParen) {
                let poly = self.exppoly()?;
                self.expect(TokenKind::RParen)?;
                return Ok(Expr::PolyPow(Box::new(atom), poly));
            }
            let negative = self.eat(TokenKind::Minus);
            let k = self.expect_int()?;
            return Ok(Expr::IntPow(Box::new(atom), if negative { -k } else { k }));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.advance();
                // Rational literal p/k, but only when the denominator is not
                // itself exponentiated: 1/2^n must stay 1/(2^n).
                if self.peek().kind == TokenKind::Slash
                    && let TokenKind::Int(d) = self.peek_at(1).kind
                    && d > 0
                    && self.peek_at(2).kind != TokenKind::Caret
                {
                    self.advance();
                    self.advance();
                    return Ok(Expr::Rational(Rational::new(n.into(), d.into())));
                }
                Ok(Expr::Rational(rat(n)))
            }
            TokenKind::KwQ => {
                self.advance();
                if self.eat(TokenKind::Caret) {
                    if self.eat(TokenKind::LParen) {
                        let poly = self.exppoly()?;
                        self.expect(TokenKind::RParen)?;
                        Ok(Expr::QPow(poly))
                    } else {
                        let negative = self.eat(TokenKind::Minus);
                        let k = self.expect_int()?;
                        Ok(Expr::QPow(ExpPoly::from_integer(if negative { -k } else { k })))
                    }
                } else {
                    // Bare `q` is shorthand for q^1.
                    Ok(Expr::QPow(ExpPoly::from_integer(1)))
                }
            }
            TokenKind::KwPoch => self.poch(),
            TokenKind::KwSum => self.sum(),
            TokenKind::KwBSum => self.bsum(),
            TokenKind::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(e)
            }
            TokenKind::Ident(name) => Err(self.error(
                format!("index variable '{name}' can only appear inside an exponent or bound"),
                Some("a rational, 'q', 'poch', 'sum', 'bsum' or '('"),
            )),
            other => Err(self.error(
                format!("found {}", other.describe()),
                Some("a rational, 'q', 'poch', 'sum', 'bsum' or '('"),
            )),
        }
    }

    fn poch(&mut self) -> Result<Expr, ParseError> {
        self.expect(TokenKind::KwPoch)?;
        self.expect(TokenKind::LParen)?;
        let negative = self.eat(TokenKind::Minus);
        let one = self.expect_int()?;
        if one != 1 {
            return Err(self.error(
                format!("Pochhammer sign must be 1 or -1, found {one}"),
                Some("'1' or '-1'"),
            ));
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        self.expect(TokenKind::Comma)?;
        let arg_exp = self.exppoly()?;
        self.expect(TokenKind::Semi)?;
        let modulus = self.expect_int()?;
        if modulus < 1 {
            return Err(self.error(
                format!("Pochhammer base must be q^m with m >= 1, found {modulus}"),
                Some("a positive integer"),
            ));
        }
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::Underscore)?;
        let length = if self.eat(TokenKind::KwInf) {
            PochLen::Infinite
        } else {
            self.expect(TokenKind::LParen)?;
            let p = self.exppoly()?;
            self.expect(TokenKind::RParen)?;
            PochLen::Finite(p)
        };
        Ok(Expr::Poch { sign, arg_exp, modulus: modulus as usize, length })
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        self.expect(TokenKind::KwSum)?;
        self.expect(TokenKind::LParen)?;
        let var = self.ident()?;
        self.expect(TokenKind::Equals)?;
        let lower = self.exppoly()?;
        self.expect(TokenKind::DotDot)?;
        let upper = if self.eat(TokenKind::KwInf) { None } else { Some(self.exppoly()?) };
        self.expect(TokenKind::Comma)?;
        let body = self.expr()?;
        self.expect(TokenKind::RParen)?;
        Ok(Expr::Sum { var, lower, upper, body: Box::new(body) })
    }

    fn bsum(&mut self) -> Result<Expr, ParseError> {
        self.expect(TokenKind::KwBSum)?;
        self.expect(TokenKind::LParen)?;
        let var = self.ident()?;
        self.expect(TokenKind::Comma)?;
        let body = self.expr()?;
        self.expect(TokenKind::RParen)?;
        Ok(Expr::BSum { var, body: Box::new(body) })
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                self.advance();
                Ok(name)
            }
            other => Err(self.error(
                format!("found {}", other.describe()),
                Some("an index variable name"),
            )),
        }
    }

    // --- exponent polynomials -------------------------------------------

    fn exppoly(&mut self) -> Result<ExpPoly, ParseError> {
        let mut lhs = self.poly_term()?;
        loop {
            if self.eat(TokenKind::Plus) {
                lhs = lhs.add(&self.poly_term()?);
            } else if self.eat(TokenKind::Minus) {
                lhs = lhs.sub(&self.poly_term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn poly_term(&mut self) -> Result<ExpPoly, ParseError> {
        let mut lhs = self.poly_factor()?;
        loop {
            if self.eat(TokenKind::Star) {
                lhs = lhs.mul(&self.poly_factor()?);
            } else if self.peek().kind == TokenKind::Slash {
                let at = self.peek().position;
                self.advance();
                let rhs = self.poly_factor()?;
                let c = rhs.as_constant().ok_or(ParseError {
                    position: at,
                    message: "division inside an exponent needs a constant divisor".into(),
                    expected: Some("a rational constant".into()),
                })?;
                if c == Rational::from_integer(0.into()) {
                    return Err(ParseError {
                        position: at,
                        message: "division by zero inside an exponent".into(),
                        expected: None,
                    });
                }
                lhs = lhs.scale(&c.recip());
            } else {
                return Ok(lhs);
            }
        }
    }

    fn poly_factor(&mut self) -> Result<ExpPoly, ParseError> {
        if self.eat(TokenKind::Minus) {
            return Ok(self.poly_factor()?.neg());
        }
        let base = self.poly_atom()?;
        if self.eat(TokenKind::Caret) {
            let at = self.peek().position;
            let k = self.expect_int()?;
            if k < 0 {
                return Err(ParseError {
                    position: at,
                    message: "negative powers are not allowed inside an exponent".into(),
                    expected: Some("a nonnegative integer".into()),
                });
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn poly_atom(&mut self) -> Result<ExpPoly, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.advance();
                Ok(ExpPoly::from_integer(n))
            }
            TokenKind::Ident(name) => {
                self.advance();
                Ok(ExpPoly::var(&name))
            }
            TokenKind::LParen => {
                self.advance();
                let p = self.exppoly()?;
                self.expect(TokenKind::RParen)?;
                Ok(p)
            }
            TokenKind::KwQ => Err(self.error(
                "'q' cannot appear inside an exponent".to_string(),
                Some("an integer, an index variable or '('"),
            )),
            other => Err(self.error(
                format!("found {}", other.describe()),
                Some("an integer, an index variable or '('"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_geometric_series_text() {
        let e = parse("1/(1-q^1)").unwrap();
        match e {
            Expr::Div(num, den) => {
                assert_eq!(*num, Expr::Rational(rat(1)));
                match *den {
                    Expr::Sub(one, q) => {
                        assert_eq!(*one, Expr::Rational(rat(1)));
                        assert_eq!(*q, Expr::QPow(ExpPoly::from_integer(1)));
                    }
                    other => panic!("expected subtraction, got {other:?}"),
                }
            }
            other => panic!("expected division, got {other:?}"),
        }
    }

    #[test]
    fn parses_infinite_pochhammer() {
        let e = parse("poch(-1,1;2)_inf").unwrap();
        assert_eq!(
            e,
            Expr::Poch {
                sign: Sign::Minus,
                arg_exp: ExpPoly::from_integer(1),
                modulus: 2,
                length: PochLen::Infinite,
            }
        );
    }

    #[test]
    fn parses_andrews_sum_shape() {
        let e = parse("sum(n=0..inf, q^(n^2+n) / (poch(-1,1;1)_(n)^2 * (1+q^(n+1))))").unwrap();
        let Expr::Sum { var, lower, upper, body } = e else {
            panic!("expected a sum");
        };
        assert_eq!(var, "n");
        assert_eq!(lower, ExpPoly::from_integer(0));
        assert_eq!(upper, None);
        assert!(matches!(*body, Expr::Div(_, _)));
    }

    #[test]
    fn subtraction_is_left_associative() {
        let e = parse("1-2-3").unwrap();
        match e {
            Expr::Sub(lhs, rhs) => {
                assert!(matches!(*lhs, Expr::Sub(_, _)));
                assert_eq!(*rhs, Expr::Rational(rat(3)));
            }
            other => panic!("expected subtraction, got {other:?}"),
        }
    }

    #[test]
    fn rational_literal_does_not_capture_powered_denominator() {
        // 1/2 is a literal; 1/2^3 is 1/(2^3).
        assert_eq!(parse("1/2").unwrap(), Expr::Rational(Rational::new(1.into(), 2.into())));
        let e = parse("1/2^3").unwrap();
        match e {
            Expr::Div(_, den) => assert!(matches!(*den, Expr::IntPow(_, 3))),
            other => panic!("expected division, got {other:?}"),
        }
    }

    #[test]
    fn poly_power_on_minus_one() {
        let e = parse("(-1)^(n)*q^(n)").unwrap();
        assert!(matches!(e, Expr::Mul(lhs, _) if matches!(*lhs, Expr::PolyPow(_, _))));
    }

    #[test]
    fn bare_identifier_is_rejected_outside_exponents() {
        let err = parse("sum(n=0..3, n)").unwrap_err();
        assert!(err.message.contains("index variable"));
    }

    #[test]
    fn trailing_input_is_an_error() {
        let err = parse("1+1)").unwrap_err();
        assert_eq!(err.position, 3);
    }

    #[test]
    fn error_positions_are_within_input() {
        for text in ["", "poch(", "sum(n=..", "q^", "1+", "((((", "poch(-2,1;1)_inf", "q^(1..2)"] {
            match parse(text) {
                Ok(_) => {}
                Err(e) => assert!(e.position <= text.len(), "{text}: {e:?}"),
            }
        }
    }
}
