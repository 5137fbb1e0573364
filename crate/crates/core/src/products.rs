//! q-Pochhammer symbols with monomial arguments `a = ±q^r`, in an arbitrary
//! positive base `q^m`, finite or infinite, plus the pentagonal-number
//! expansion of `(q;q)_inf` used as an independent cross-check.

use num_traits::Zero;

use crate::series::{QSeries, Rational, SeriesError, Sign};

/// A Pochhammer argument of the form `sign * q^r` with `r >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialArg {
    pub sign: Sign,
    pub exponent: usize,
}

impl MonomialArg {
    pub fn new(sign: Sign, exponent: usize) -> MonomialArg {
        MonomialArg { sign, exponent }
    }

    /// `+q^r`.
    pub fn q_pow(r: usize) -> MonomialArg {
        MonomialArg::new(Sign::Plus, r)
    }

    /// `-q^r`.
    pub fn neg_q_pow(r: usize) -> MonomialArg {
        MonomialArg::new(Sign::Minus, r)
    }

    /// The coefficient of the monomial, `+1` or `-1`.
    pub fn coefficient(&self) -> Rational {
        self.sign.to_rational()
    }
}

/// Finite product `(a; q^m)_n = prod_{j=0}^{n-1} (1 - a*q^{m*j})`, truncated
/// at `order`.
pub fn poch_finite(a: MonomialArg, m: usize, n: usize, order: usize) -> QSeries {
    assert!(m >= 1, "the base q^m needs m >= 1");
    let c = a.coefficient();
    let mut out = QSeries::one(order);
    for j in 0..n {
        let k = a.exponent + m * j;
        if k > order {
            // Every remaining factor is 1 - a*q^{>order} = 1 (mod q^{order+1});
            // beyond-order factors cannot touch stored coefficients.
            break;
        }
        out = out.mul_one_minus_monomial(&c, k);
    }
    out
}

/// Infinite product `(a; q^m)_inf`, truncated at `order`. Factors whose
/// exponent exceeds the order contribute 1 and are skipped, so the cutoff is
/// exact rather than an approximation.
///
/// With `a = +q^0 = 1` the `j = 0` factor is zero and the whole product
/// collapses to the zero series; callers that do not want that must pass
/// `r >= 1`.
pub fn poch_inf(a: MonomialArg, m: usize, order: usize) -> QSeries {
    assert!(m >= 1, "the base q^m needs m >= 1");
    let c = a.coefficient();
    let mut out = QSeries::one(order);
    let mut k = a.exponent;
    loop {
        out = out.mul_one_minus_monomial(&c, k);
        k += m;
        if k > order {
            break;
        }
    }
    out
}

/// Inverse of the infinite product, computed by dividing out one binomial
/// factor at a time (linear per factor, no full-series inversion).
pub fn poch_inf_inverse(a: MonomialArg, m: usize, order: usize) -> Result<QSeries, SeriesError> {
    assert!(m >= 1, "the base q^m needs m >= 1");
    let c = a.coefficient();
    let mut out = QSeries::one(order);
    let mut k = a.exponent;
    loop {
        out = out.div_one_minus_monomial(&c, k)?;
        k += m;
        if k > order {
            break;
        }
    }
    Ok(out)
}

/// Inverse of the finite product `(a; q^m)_n`.
pub fn poch_finite_inverse(
    a: MonomialArg,
    m: usize,
    n: usize,
    order: usize,
) -> Result<QSeries, SeriesError> {
    assert!(m >= 1, "the base q^m needs m >= 1");
    let c = a.coefficient();
    let mut out = QSeries::one(order);
    for j in 0..n {
        let k = a.exponent + m * j;
        if k > order {
            break;
        }
        out = out.div_one_minus_monomial(&c, k)?;
    }
    Ok(out)
}

/// The alternating geometric series `1/(1+q^m) = 1 - q^m + q^{2m} - ...`.
///
/// `m = 0` is rejected: the bilateral sums special-case their `n = 0` term as
/// the exact constant `1/2` instead.
pub fn inv_one_plus_pow(m: usize, order: usize) -> Result<QSeries, SeriesError> {
    if m == 0 {
        return Err(SeriesError::ZeroExponent);
    }
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut sign = 1i64;
    let mut k = 0usize;
    while k <= order {
        coeffs[k] = crate::series::rat(sign);
        sign = -sign;
        k += m;
    }
    Ok(QSeries::from_coeffs(coeffs))
}

/// Euler's pentagonal expansion `sum_{k in Z} (-1)^k q^{k(3k-1)/2}`, truncated
/// at `order`. Deliberately a sum-side implementation, independent of
/// [`poch_inf`], so the two act as mutual oracles for `(q;q)_inf`.
pub fn pentagonal(order: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut k = 0i64;
    loop {
        let mut hit = false;
        for n in [k, -k] {
            let e = n * (3 * n - 1) / 2;
            if (0..=order as i64).contains(&e) {
                coeffs[e as usize] = crate::series::rat(if n.rem_euclid(2) == 0 { 1 } else { -1 });
                hit = true;
            }
            if k == 0 {
                break;
            }
        }
        if !hit && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_coeffs(coeffs)
}
