//! Bilateral sums over all integers and the three representations of
//! Ramanujan's third order mock theta function f(q).
//!
//! A bilateral term `(-1)^n q^{e(n)} / (1 + q^n)` is canonicalized before it
//! touches series arithmetic: for `n < 0` it is rewritten as
//! `(-1)^n q^{e(n)+|n|} / (1 + q^{|n|})` (multiply numerator and denominator
//! by `q^{|n|}`), and the `n = 0` term is the exact constant `q^{e(0)} / 2`.

use super::{CatalogError, sum_terms};
use crate::products::{MonomialArg, inv_one_plus_pow, poch_inf_inverse};
use crate::series::{QSeries, Rational, ratio};

/// Denominator of a canonicalized bilateral term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilateralDenom {
    /// The `n = 0` half-constant: `1/(1+q^0) = 1/2`.
    HalfConstant,
    /// `1/(1 + q^k)` with `k >= 1`.
    OnePlusPow(usize),
}

/// One canonicalized term of a bilateral sum. The sign factor `(-1)^n` is
/// applied by the summation, not stored here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BilateralTerm {
    pub n: i64,
    pub exponent: usize,
    pub denom: BilateralDenom,
}

impl BilateralTerm {
    /// Canonicalize the term at index `n` with raw exponent `e(n)`.
    ///
    /// Fails with `NegativeExponent` when the canonicalized exponent is still
    /// negative; no sum in the catalog reaches that case.
    pub fn new(n: i64, raw_exponent: i64) -> Result<BilateralTerm, CatalogError> {
        let exponent = if n < 0 { raw_exponent + n.abs() } else { raw_exponent };
        if exponent < 0 {
            return Err(CatalogError::NegativeExponent {
                label: format!("bilateral term n = {n}"),
                exponent,
            });
        }
        let denom = if n == 0 {
            BilateralDenom::HalfConstant
        } else {
            BilateralDenom::OnePlusPow(n.unsigned_abs() as usize)
        };
        Ok(BilateralTerm { n, exponent: exponent as usize, denom })
    }

    /// The term as a series: `q^exponent / (1 + q^k)` or `q^exponent / 2`.
    pub fn eval(&self, order: usize) -> Result<QSeries, CatalogError> {
        Ok(match self.denom {
            BilateralDenom::HalfConstant => QSeries::monomial(ratio(1, 2), self.exponent, order),
            BilateralDenom::OnePlusPow(k) => inv_one_plus_pow(k, order)?.shift(self.exponent),
        })
    }

    fn signed_eval(&self, order: usize) -> Result<QSeries, CatalogError> {
        let s = self.eval(order)?;
        Ok(if self.n.rem_euclid(2) == 0 { s } else { s.neg() })
    }
}

/// `sum_{n in Z} (-1)^n q^{e(n)} / (1 + q^n)`, truncated at `order`. Both
/// half-ranges use the standard valuation cutoff.
pub fn bilateral_sum(
    order: usize,
    label: &str,
    exponent: impl Fn(i64) -> i64,
) -> Result<QSeries, CatalogError> {
    let center = BilateralTerm::new(0, exponent(0))?.signed_eval(order)?;
    let positive = sum_terms(order, &format!("{label} (n > 0)"), |i| {
        let n = i as i64 + 1;
        BilateralTerm::new(n, exponent(n))?.signed_eval(order)
    })?;
    let negative = sum_terms(order, &format!("{label} (n < 0)"), |i| {
        let n = -(i as i64) - 1;
        BilateralTerm::new(n, exponent(n))?.signed_eval(order)
    })?;
    Ok(center.add(&positive).add(&negative))
}

/// Which representation of f(q) to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemarkVariant {
    /// `sum_{n>=0} q^{n^2} / (-q;q)_n^2`.
    Eulerian,
    /// `(2/(q;q)_inf) sum_{n in Z} (-1)^n q^{n(3n+1)/2} / (1+q^n)`.
    BilateralA,
    /// `2 - (2/(q;q)_inf) sum_{n in Z} (-1)^n q^{3n(n+1)/2} / (1+q^n)`.
    BilateralB,
}

/// One of the three representations of the mock theta function f(q).
pub fn remark_f_series(variant: RemarkVariant, order: usize) -> Result<QSeries, CatalogError> {
    match variant {
        RemarkVariant::Eulerian => sum_terms(order, "f(q) Eulerian form", |n| {
            if n * n > order {
                return Ok(QSeries::zero(order));
            }
            let inv = poch_finite_sq_inverse(n, order)?;
            Ok(inv.shift(n * n))
        }),
        RemarkVariant::BilateralA => {
            let sum = bilateral_sum(order, "f(q) bilateral A", |n| n * (3 * n + 1) / 2)?;
            let euler_inv = poch_inf_inverse(MonomialArg::q_pow(1), 1, order)?;
            Ok(sum.mul(&euler_inv).scale(&Rational::from_integer(2.into())))
        }
        RemarkVariant::BilateralB => {
            let sum = bilateral_sum(order, "f(q) bilateral B", |n| 3 * n * (n + 1) / 2)?;
            let euler_inv = poch_inf_inverse(MonomialArg::q_pow(1), 1, order)?;
            let scaled = sum.mul(&euler_inv).scale(&Rational::from_integer(2.into()));
            Ok(QSeries::monomial(Rational::from_integer(2.into()), 0, order).sub(&scaled))
        }
    }
}

/// `1/(-q;q)_n^2`.
fn poch_finite_sq_inverse(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    let one = crate::products::poch_finite_inverse(MonomialArg::neg_q_pow(1), 1, n, order)?;
    Ok(one.mul(&one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn center_term_is_half() {
        let t = BilateralTerm::new(0, 0).unwrap();
        assert_eq!(t.denom, BilateralDenom::HalfConstant);
        let s = t.eval(4).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &ratio(1, 2));
    }

    #[test]
    fn negative_index_canonicalization() {
        // e(n) = n(3n+1)/2 at n = -2: raw 5, canonical 5 + 2 = 7, denominator 1+q^2.
        let t = BilateralTerm::new(-2, 5).unwrap();
        assert_eq!(t.exponent, 7);
        assert_eq!(t.denom, BilateralDenom::OnePlusPow(2));
    }

    #[test]
    fn canonicalization_is_multiplying_through_by_q_abs_n() {
        // For n < 0 the rewrite q^{e}/(1+q^n) = q^{e+|n|}/(1+q^{|n|}) must
        // satisfy eval * (1+q^{|n|}) = q^{e+|n|} as series.
        let order = 30;
        for (n, raw) in [(-1i64, 1i64), (-2, 5), (-3, 12), (-4, 22)] {
            let t = BilateralTerm::new(n, raw).unwrap();
            let evaluated = t.eval(order).unwrap();
            let back = evaluated.mul_one_minus_monomial(&rat(-1), n.unsigned_abs() as usize);
            let expect = QSeries::monomial(rat(1), t.exponent, order);
            assert_eq!(back, expect, "n = {n}");
        }
    }

    #[test]
    fn rejects_negative_canonical_exponent() {
        let err = BilateralTerm::new(-5, -8).unwrap_err();
        assert!(matches!(err, CatalogError::NegativeExponent { exponent: -3, .. }));
    }

    #[test]
    fn eulerian_f_q_leading_coefficients() {
        // f(q) = 1 + q - 2q^2 + 3q^3 - 3q^4 + 3q^5 - 5q^6 + ...
        let s = remark_f_series(RemarkVariant::Eulerian, 6).unwrap();
        let expect = [1, 1, -2, 3, -3, 3, -5];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(k).unwrap(), &rat(*e), "coefficient of q^{k}");
        }
    }

    #[test]
    fn bilateral_a_center_term_before_prefactor() {
        let s = bilateral_sum(10, "test", |n| n * (3 * n + 1) / 2).unwrap();
        // Only the n = 0 term contributes the constant 1/2.
        assert_eq!(s.coeff(0).unwrap(), &ratio(1, 2));
    }

    #[test]
    fn three_variants_agree_to_order_40() {
        let e = remark_f_series(RemarkVariant::Eulerian, 40).unwrap();
        let a = remark_f_series(RemarkVariant::BilateralA, 40).unwrap();
        let b = remark_f_series(RemarkVariant::BilateralB, 40).unwrap();
        assert_eq!(e.first_mismatch_up_to(&a, 40).unwrap(), None);
        assert_eq!(e.first_mismatch_up_to(&b, 40).unwrap(), None);
    }
}
