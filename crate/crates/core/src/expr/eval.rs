//! Evaluator from expressions to truncated series.
//!
//! Internally every subexpression evaluates to a *frame* `q^shift * series`
//! with a possibly negative shift, so that bilateral-sum bodies like
//! `q^e/(1+q^n)` at negative `n` renormalize exactly the way the catalog's
//! bilateral terms do (multiply numerator and denominator by `q^{|n|}`).
//! Frames also track through which absolute exponent they are exact; if the
//! requested order is not covered after a pass (possible only when negative
//! shifts survive into the result), evaluation reruns at a higher working
//! order. Only values with nonnegative valuation can leave the evaluator.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::poly::ExpPoly;
use super::{Expr, PochLen};
use crate::products::{self, MonomialArg};
use crate::series::{QSeries, Rational, rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A `q`-exponent, Pochhammer parameter, sum term or the final result had
    /// a negative exponent where a power series was required.
    NegativeExponent(String),
    /// An exponent polynomial evaluated to a non-integer (or out-of-range)
    /// value at some index assignment.
    NonIntegerExponent(String),
    /// Division by a series with zero constant term (after renormalization).
    ZeroConstantTerm,
    /// An infinite sum failed to reach terms beyond the order within the
    /// term budget, or the working precision did not stabilize.
    DivergenceGuard(String),
    /// A variable was referenced outside any enclosing sum binding it.
    UnboundVariable(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NegativeExponent(what) => write!(f, "negative exponent: {what}"),
            EvalError::NonIntegerExponent(what) => write!(f, "non-integer exponent: {what}"),
            EvalError::ZeroConstantTerm => {
                write!(f, "division by a series with zero constant term")
            }
            EvalError::DivergenceGuard(what) => write!(f, "divergence guard: {what}"),
            EvalError::UnboundVariable(name) => write!(f, "unbound index variable '{name}'"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Sentinel for "exact at every order" (rational literals, pure powers).
const EXACT_EVERYWHERE: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Frame {
    shift: i64,
    coeffs: QSeries,
    exact_to: i64,
}

impl Frame {
    fn rational(c: Rational, w: usize) -> Frame {
        Frame { shift: 0, coeffs: QSeries::monomial(c, 0, w), exact_to: EXACT_EVERYWHERE }
    }

    fn qpow(e: i64, w: usize) -> Frame {
        Frame { shift: e, coeffs: QSeries::one(w), exact_to: EXACT_EVERYWHERE }
    }

    fn series(s: QSeries, exact_to: i64) -> Frame {
        Frame { shift: 0, coeffs: s, exact_to }
    }

    fn zero(w: usize) -> Frame {
        Frame { shift: 0, coeffs: QSeries::zero(w), exact_to: EXACT_EVERYWHERE }
    }

    fn abs_valuation(&self) -> Option<i64> {
        self.coeffs.valuation().map(|v| self.shift + v as i64)
    }

    /// Valuation for exactness bookkeeping: a stored-zero value is treated as
    /// having valuation just past its exactness bound.
    fn effective_valuation(&self) -> i64 {
        self.abs_valuation().unwrap_or_else(|| self.exact_to.saturating_add(1))
    }

    fn add(&self, other: &Frame) -> Frame {
        let shift = self.shift.min(other.shift);
        let a = self.coeffs.shift((self.shift - shift) as usize);
        let b = other.coeffs.shift((other.shift - shift) as usize);
        let w = a.order().min(b.order()) as i64;
        Frame {
            shift,
            coeffs: a.add(&b),
            exact_to: self
                .exact_to
                .min(other.exact_to)
                .min(shift.saturating_add(w)),
        }
    }

    fn neg(&self) -> Frame {
        Frame { shift: self.shift, coeffs: self.coeffs.neg(), exact_to: self.exact_to }
    }

    fn mul(&self, other: &Frame) -> Frame {
        let shift = self.shift.saturating_add(other.shift);
        let coeffs = self.coeffs.mul(&other.coeffs);
        let w = coeffs.order() as i64;
        let exact_to = self
            .exact_to
            .saturating_add(other.effective_valuation())
            .min(other.exact_to.saturating_add(self.effective_valuation()))
            .min(shift.saturating_add(w));
        Frame { shift, coeffs, exact_to }
    }

    fn inverse(&self) -> Result<Frame, EvalError> {
        let v = self.coeffs.valuation().ok_or(EvalError::ZeroConstantTerm)?;
        let w = self.coeffs.order();
        let mut lowered: Vec<Rational> = self.coeffs.coeffs()[v..].to_vec();
        lowered.resize(w + 1, Rational::zero());
        let inv = QSeries::from_coeffs(lowered)
            .inverse()
            .map_err(|_| EvalError::ZeroConstantTerm)?;
        let rel_exact = self.exact_to.saturating_sub(self.shift).min(w as i64) - v as i64;
        let shift = -(self.shift + v as i64);
        Ok(Frame { shift, coeffs: inv, exact_to: shift.saturating_add(rel_exact) })
    }

    fn div(&self, other: &Frame) -> Result<Frame, EvalError> {
        Ok(self.mul(&other.inverse()?))
    }

    fn pow(&self, k: i64) -> Result<Frame, EvalError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let w = self.coeffs.order();
        let mut acc = Frame::rational(rat(1), w);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

enum Finalized {
    Done(QSeries),
    /// Additional working order needed to cover the requested order.
    Retry(usize),
}

impl Frame {
    fn finalize(&self, order: usize) -> Result<Finalized, EvalError> {
        if self.exact_to < order as i64 {
            return Ok(Finalized::Retry((order as i64 - self.exact_to) as usize));
        }
        let w = self.coeffs.order();
        if self.shift < 0 {
            let depth = (-self.shift) as usize;
            for k in 0..depth.min(w + 1) {
                if !self.coeffs.coeffs()[k].is_zero() {
                    return Err(EvalError::NegativeExponent(format!(
                        "result has coefficient {} at q^{}",
                        self.coeffs.coeffs()[k],
                        self.shift + k as i64
                    )));
                }
            }
            if order + depth > w {
                return Ok(Finalized::Retry(order + depth - w));
            }
        }
        let coeffs = (0..=order as i64)
            .map(|k| {
                let idx = k - self.shift;
                if idx < 0 || idx > w as i64 {
                    Rational::zero()
                } else {
                    self.coeffs.coeffs()[idx as usize].clone()
                }
            })
            .collect();
        Ok(Finalized::Done(QSeries::from_coeffs(coeffs)))
    }
}

/// Evaluate a closed expression to an exact series truncated at `order`.
pub fn eval(expr: &Expr, order: usize) -> Result<QSeries, EvalError> {
    let mut working = order;
    for _ in 0..5 {
        let frame = eval_frame(expr, &mut BTreeMap::new(), working)?;
        match frame.finalize(order)? {
            Finalized::Done(s) => return Ok(s),
            Finalized::Retry(extra) => working += extra,
        }
    }
    Err(EvalError::DivergenceGuard("working precision did not stabilize".into()))
}

fn poly_int(
    p: &ExpPoly,
    env: &BTreeMap<String, i64>,
    context: &str,
) -> Result<i64, EvalError> {
    let value = p.eval(env).ok_or_else(|| {
        let name = p
            .free_vars()
            .find(|v| !env.contains_key(*v))
            .unwrap_or("?")
            .to_string();
        EvalError::UnboundVariable(name)
    })?;
    if !value.is_integer() {
        return Err(EvalError::NonIntegerExponent(format!("{context}: {p} = {value}")));
    }
    value
        .to_integer()
        .to_i64()
        .ok_or_else(|| EvalError::NonIntegerExponent(format!("{context}: {p} out of range")))
}

fn eval_frame(
    expr: &Expr,
    env: &mut BTreeMap<String, i64>,
    w: usize,
) -> Result<Frame, EvalError> {
    match expr {
        Expr::Rational(c) => Ok(Frame::rational(c.clone(), w)),
        Expr::QPow(p) => Ok(Frame::qpow(poly_int(p, env, "q-exponent")?, w)),
        Expr::Poch { sign, arg_exp, modulus, length } => {
            let r = poly_int(arg_exp, env, "Pochhammer argument exponent")?;
            if r < 0 {
                return Err(EvalError::NegativeExponent(format!(
                    "Pochhammer argument q^{r}"
                )));
            }
            let arg = MonomialArg::new(*sign, r as usize);
            match length {
                PochLen::Finite(p) => {
                    let len = poly_int(p, env, "Pochhammer length")?;
                    if len < 0 {
                        return Err(EvalError::NegativeExponent(format!(
                            "Pochhammer length {len}"
                        )));
                    }
                    let len = len as usize;
                    let s = products::poch_finite(arg, *modulus, len, w);
                    // A finite product whose full degree fits the working
                    // order is a polynomial known everywhere.
                    let degree = len as i128 * r as i128
                        + *modulus as i128 * (len as i128 * (len as i128 - 1) / 2);
                    let exact = if degree <= w as i128 { EXACT_EVERYWHERE } else { w as i64 };
                    Ok(Frame::series(s, exact))
                }
                PochLen::Infinite => {
                    Ok(Frame::series(products::poch_inf(arg, *modulus, w), w as i64))
                }
            }
        }
        Expr::Add(a, b) => Ok(eval_frame(a, env, w)?.add(&eval_frame(b, env, w)?)),
        Expr::Sub(a, b) => Ok(eval_frame(a, env, w)?.add(&eval_frame(b, env, w)?.neg())),
        Expr::Mul(a, b) => Ok(eval_frame(a, env, w)?.mul(&eval_frame(b, env, w)?)),
        Expr::Div(a, b) => eval_frame(a, env, w)?.div(&eval_frame(b, env, w)?),
        Expr::Neg(a) => Ok(eval_frame(a, env, w)?.neg()),
        Expr::IntPow(a, k) => eval_frame(a, env, w)?.pow(*k),
        Expr::PolyPow(a, p) => {
            let k = poly_int(p, env, "power")?;
            eval_frame(a, env, w)?.pow(k)
        }
        Expr::Sum { var, lower, upper, body } => {
            let lo = poly_int(lower, env, "lower bound")?;
            match upper {
                Some(u) => {
                    let hi = poly_int(u, env, "upper bound")?;
                    let mut acc = Frame::zero(w);
                    for i in lo..=hi {
                        acc = acc.add(&eval_at(body, env, var, i, w)?);
                    }
                    Ok(acc)
                }
                None => {
                    let mut acc = Frame::zero(w);
                    run_cutoff(w, &format!("sum over {var}"), |offset| {
                        let t = eval_at(body, env, var, lo + offset as i64, w)?;
                        accumulate(&mut acc, t, w)
                    })?;
                    Ok(acc)
                }
            }
        }
        Expr::BSum { var, body } => {
            let mut acc = Frame::zero(w);
            let center = eval_at(body, env, var, 0, w)?;
            accumulate(&mut acc, center, w)?;
            let mut positive = Frame::zero(w);
            run_cutoff(w, &format!("bsum over {var} (positive)"), |offset| {
                let t = eval_at(body, env, var, offset as i64 + 1, w)?;
                accumulate(&mut positive, t, w)
            })?;
            let mut negative = Frame::zero(w);
            run_cutoff(w, &format!("bsum over {var} (negative)"), |offset| {
                let t = eval_at(body, env, var, -(offset as i64) - 1, w)?;
                accumulate(&mut negative, t, w)
            })?;
            Ok(acc.add(&positive).add(&negative))
        }
    }
}

fn eval_at(
    body: &Expr,
    env: &mut BTreeMap<String, i64>,
    var: &str,
    value: i64,
    w: usize,
) -> Result<Frame, EvalError> {
    let previous = env.insert(var.to_string(), value);
    let result = eval_frame(body, env, w);
    match previous {
        Some(p) => {
            env.insert(var.to_string(), p);
        }
        None => {
            env.remove(var);
        }
    }
    result
}

/// Add one term into the accumulator, reporting whether it was quiet
/// (valuation beyond the working order). Terms with negative valuation are
/// rejected: an infinite sum of such terms is not a power series.
fn accumulate(acc: &mut Frame, term: Frame, w: usize) -> Result<bool, EvalError> {
    match term.abs_valuation() {
        Some(v) if v < 0 => Err(EvalError::NegativeExponent(format!(
            "sum term has valuation {v}"
        ))),
        Some(v) if v <= w as i64 => {
            *acc = acc.add(&term);
            Ok(false)
        }
        _ => Ok(true),
    }
}

/// Drive an infinite summation with the standard cutoff: stop after three
/// consecutive quiet terms, fail after `10 * (w + 10)` terms.
fn run_cutoff(
    w: usize,
    label: &str,
    mut step: impl FnMut(usize) -> Result<bool, EvalError>,
) -> Result<(), EvalError> {
    let cap = 10 * (w + 10);
    let mut quiet = 0usize;
    let mut offset = 0usize;
    while quiet < 3 {
        if offset >= cap {
            return Err(EvalError::DivergenceGuard(format!(
                "{label}: {cap} terms without the valuation passing the order"
            )));
        }
        if step(offset)? {
            quiet += 1;
        } else {
            quiet = 0;
        }
        offset += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::series::ratio;

    fn ev(text: &str, order: usize) -> QSeries {
        eval(&parse(text).unwrap(), order).unwrap()
    }

    fn ev_err(text: &str, order: usize) -> EvalError {
        eval(&parse(text).unwrap(), order).unwrap_err()
    }

    #[test]
    fn geometric_series() {
        let s = ev("1/(1-q^1)", 3);
        assert_eq!(s.coeffs(), &[rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn rational_literals_and_scaling() {
        let s = ev("3/2 * q^2", 4);
        assert_eq!(s.coeff(2).unwrap(), &ratio(3, 2));
    }

    #[test]
    fn half_exponent_is_rejected() {
        assert!(matches!(ev_err("q^(1/2)", 5), EvalError::NonIntegerExponent(_)));
    }

    #[test]
    fn negative_final_exponent_is_rejected() {
        assert!(matches!(ev_err("q^-1", 5), EvalError::NegativeExponent(_)));
        assert!(matches!(ev_err("1/q^2", 5), EvalError::NegativeExponent(_)));
    }

    #[test]
    fn negative_exponents_may_cancel_internally() {
        // q^-2 * q^5 = q^3.
        let s = ev("q^-2 * q^5", 6);
        assert_eq!(s, QSeries::monomial(rat(1), 3, 6));
        // (1 + q^-3) * q^3 = q^3 + 1.
        let t = ev("(1 + q^-3) * q^3", 6);
        assert_eq!(t.coeff(0).unwrap(), &rat(1));
        assert_eq!(t.coeff(3).unwrap(), &rat(1));
    }

    #[test]
    fn division_by_zero_series_is_reported() {
        assert_eq!(ev_err("1/(q^1-q^1)", 5), EvalError::ZeroConstantTerm);
    }

    #[test]
    fn unbound_variable_is_reported() {
        assert_eq!(
            ev_err("q^(n)", 5),
            EvalError::UnboundVariable("n".to_string())
        );
    }

    #[test]
    fn finite_sum_evaluates_directly() {
        // sum(k=1..4, q^(k)) = q + q^2 + q^3 + q^4
        let s = ev("sum(k=1..4, q^(k))", 5);
        for k in 1..=4 {
            assert_eq!(s.coeff(k).unwrap(), &rat(1), "q^{k}");
        }
        assert!(s.coeff(0).unwrap().is_zero());
        assert!(s.coeff(5).unwrap().is_zero());
    }

    #[test]
    fn empty_finite_sum_is_zero() {
        assert!(ev("sum(k=3..2, q^(k))", 4).is_zero());
    }

    #[test]
    fn infinite_sum_matches_product_identity() {
        // sum q^n / (q;q)_n = 1/(q;q)_inf  (partitions).
        let lhs = ev("sum(n=0..inf, q^(n) / poch(1,1;1)_(n))", 20);
        let rhs = products::poch_inf(MonomialArg::q_pow(1), 1, 20)
            .inverse()
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bilateral_sum_handles_negative_indices() {
        // bsum(n, (-1)^(n) q^{n(3n+1)/2}/(1+q^n)) has constant term 1/2 and
        // matches the canonicalized catalog form.
        let text = "bsum(n, (-1)^(n) * q^(n*(3*n+1)/2) / (1+q^(n)))";
        let s = ev(text, 30);
        let reference =
            crate::catalog::bilateral_sum(30, "test", |n| n * (3 * n + 1) / 2).unwrap();
        assert_eq!(s, reference);
    }

    #[test]
    fn nested_sum_with_dependent_lower_bound() {
        // sum(j=1..2, sum(n=j..3, q^(n+j)))
        //   = (q^2+q^3+q^4) + (q^4+q^5)
        let s = ev("sum(j=1..2, sum(n=j..3, q^(n+j)))", 6);
        assert_eq!(s.coeff(2).unwrap(), &rat(1));
        assert_eq!(s.coeff(3).unwrap(), &rat(1));
        assert_eq!(s.coeff(4).unwrap(), &rat(2));
        assert_eq!(s.coeff(5).unwrap(), &rat(1));
    }

    #[test]
    fn shadowed_index_variables_restore() {
        // Inner n shadows outer n; the outer keeps its binding afterwards.
        let s = ev("sum(n=1..2, q^(n) * sum(n=0..1, q^(n)))", 6);
        // (q + q^2)(1 + q) = q + 2q^2 + q^3
        assert_eq!(s.coeff(1).unwrap(), &rat(1));
        assert_eq!(s.coeff(2).unwrap(), &rat(2));
        assert_eq!(s.coeff(3).unwrap(), &rat(1));
    }

    #[test]
    fn integer_power_inverts_on_negative_exponent() {
        let s = ev("poch(1,1;1)_inf^-1", 15);
        let direct = products::poch_inf(MonomialArg::q_pow(1), 1, 15)
            .inverse()
            .unwrap();
        assert_eq!(s, direct);
    }

    #[test]
    fn divergent_sum_hits_guard() {
        // Every term is the constant 1; the valuation never grows.
        assert!(matches!(
            ev_err("sum(n=0..inf, 1)", 5),
            EvalError::DivergenceGuard(_)
        ));
    }

    #[test]
    fn power_rule_under_any_binding() {
        // q^(n)*q^(m) = q^{n+m} for arbitrary bound values, pinned through
        // one-point sums.
        for a in 0..4 {
            for b in 0..4 {
                let text = format!("sum(n={a}..{a}, sum(m={b}..{b}, q^(n)*q^(m)))");
                let s = ev(&text, 8);
                assert_eq!(s, QSeries::monomial(rat(1), a + b, 8), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn eval_is_deterministic() {
        let text = "bsum(n, (-1)^(n) * q^(3*n*(n+1)/2) / (1+q^(n)))";
        assert_eq!(ev(text, 25), ev(text, 25));
    }
}
