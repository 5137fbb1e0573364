//! The double-sum identity for the ed/od family at `-q`, the theta-difference
//! identity over the full lattice, and the degenerate quadratic-form identity
//! under monomial specializations.

use std::time::Instant;

use super::{CatalogError, VerificationReport, compare_series, sum_terms};
use crate::products::{MonomialArg, inv_one_plus_pow, poch_inf, poch_inf_inverse};
use crate::series::{QSeries, rat};

fn monomial_or_zero(e: i64, order: usize) -> QSeries {
    if e < 0 || e as usize > order {
        QSeries::zero(order)
    } else {
        QSeries::monomial(rat(1), e as usize, order)
    }
}

/// Right side of the double-sum identity:
/// `-(q(q;q)_inf(-q^2;q^2)_inf/(q^2;q^2)_inf^2)
///    sum_{n,m>=0} (-1)^m q^{n(n+3)/2 + 2nm + 2m^2 + 2m} (1 + q^{2m+1})`.
pub(super) fn double_sum_rhs(order: usize) -> Result<QSeries, CatalogError> {
    let even_inv = poch_inf_inverse(MonomialArg::q_pow(2), 2, order)?;
    let prefactor = poch_inf(MonomialArg::q_pow(1), 1, order)
        .mul(&poch_inf(MonomialArg::neg_q_pow(2), 2, order))
        .mul(&even_inv)
        .mul(&even_inv)
        .shift(1)
        .neg();
    // Outer sum over m: the n = 0 summand has exponent 2m^2 + 2m, so the
    // outer valuation grows quadratically; same for the inner sum over n.
    let double = sum_terms(order, "s3 double sum (outer m)", |m| {
        let m = m as i64;
        let inner = sum_terms(order, "s3 double sum (inner n)", |n| {
            let n = n as i64;
            let e = n * (n + 3) / 2 + 2 * n * m + 2 * m * m + 2 * m;
            Ok(monomial_or_zero(e, order).add(&monomial_or_zero(e + 2 * m + 1, order)))
        })?;
        Ok(if m % 2 == 0 { inner } else { inner.neg() })
    })?;
    Ok(prefactor.mul(&double))
}

/// Left side of the theta-difference identity:
/// `(sum_{n,m>=0} - sum_{n,m<0}) (-1)^m q^{n(n+3)/2 + 2nm + 2m(m+1)}`.
///
/// The negative quadrant is enumerated over `n, m <= -1`; every exponent
/// there is at least 1, and that is verified at runtime.
pub(super) fn theta_diff_lattice_sum(order: usize) -> Result<QSeries, CatalogError> {
    let positive = sum_terms(order, "s3 theta diff (m >= 0)", |m| {
        let m = m as i64;
        let inner = sum_terms(order, "s3 theta diff (n >= 0)", |n| {
            let n = n as i64;
            let e = n * (n + 3) / 2 + 2 * n * m + 2 * m * (m + 1);
            if e < 0 {
                return Err(CatalogError::NegativeExponent {
                    label: format!("s3.theta_diff lattice term (n,m) = ({n},{m})"),
                    exponent: e,
                });
            }
            Ok(monomial_or_zero(e, order))
        })?;
        Ok(if m % 2 == 0 { inner } else { inner.neg() })
    })?;
    // n = -a, m = -b with a, b >= 1; (-1)^m = (-1)^b and the exponent becomes
    // (a^2 - 3a)/2 + 2ab + 2b^2 - 2b.
    let negative = sum_terms(order, "s3 theta diff (m < 0)", |b| {
        let b = b as i64 + 1;
        let inner = sum_terms(order, "s3 theta diff (n < 0)", |a| {
            let a = a as i64 + 1;
            let e = (a * a - 3 * a) / 2 + 2 * a * b + 2 * b * b - 2 * b;
            if e < 0 {
                return Err(CatalogError::NegativeExponent {
                    label: format!("s3.theta_diff lattice term (n,m) = ({},{})", -a, -b),
                    exponent: e,
                });
            }
            Ok(monomial_or_zero(e, order))
        })?;
        Ok(if b % 2 == 0 { inner } else { inner.neg() })
    })?;
    Ok(positive.sub(&negative))
}

/// Right side of the theta-difference identity:
/// `2(q^2;q^2)_inf/((1+q)(q;q^2)_inf) - (q^2;q^2)_inf/((1+q)(-q^2;q^2)_inf)`.
pub(super) fn theta_diff_rhs(order: usize) -> Result<QSeries, CatalogError> {
    let even = poch_inf(MonomialArg::q_pow(2), 2, order);
    let one_plus_q_inv = inv_one_plus_pow(1, order)?;
    let first = even
        .scale(&rat(2))
        .mul(&one_plus_q_inv)
        .mul(&poch_inf_inverse(MonomialArg::q_pow(1), 2, order)?);
    let second = even
        .mul(&one_plus_q_inv)
        .mul(&poch_inf_inverse(MonomialArg::neg_q_pow(2), 2, order)?);
    Ok(first.sub(&second))
}

/// Check the degenerate quadratic-form identity
/// `sum_{n,m>=0} z^n w^m q^{n^2+2cnm+c^2m^2}
///    = (1/(1-w/z^c)) sum_{k=0}^{c-1} sum_{n>=0} z^{cn+k} q^{(cn+k)^2} (1 - w^{n+1}/z^{c(n+1)})`
/// under the monomial specialization `z = q^s`, `w = q^t`, which needs
/// `t - c*s >= 1` for the prefactor to be a power series.
pub fn s3_degenerate_check(
    c: usize,
    s: usize,
    t: usize,
    order: usize,
) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    if c == 0 || s == 0 || t == 0 {
        return Err(CatalogError::InvalidSpecialization(
            "c, s, t must be positive integers".into(),
        ));
    }
    let d = t as i64 - (c * s) as i64;
    if d < 1 {
        return Err(CatalogError::InvalidSpecialization(format!(
            "t - c*s = {d} but the specialization needs t - c*s >= 1"
        )));
    }
    let d = d as usize;
    let (ci, si, ti) = (c as i64, s as i64, t as i64);

    let lhs = sum_terms(order, "s3 degenerate (outer m)", |m| {
        let m = m as i64;
        sum_terms(order, "s3 degenerate (inner n)", |n| {
            let n = n as i64;
            let e = n * n + 2 * ci * n * m + ci * ci * m * m + si * n + ti * m;
            Ok(monomial_or_zero(e, order))
        })
    })?;

    let mut partial_thetas = QSeries::zero(order);
    for k in 0..ci {
        let inner = sum_terms(order, "s3 degenerate (partial theta)", |n| {
            let n = n as i64;
            let base = (ci * n + k) * (ci * n + k) + si * (ci * n + k);
            Ok(monomial_or_zero(base, order)
                .sub(&monomial_or_zero(base + d as i64 * (n + 1), order)))
        })?;
        partial_thetas = partial_thetas.add(&inner);
    }
    let rhs = partial_thetas.div_one_minus_monomial(&rat(1), d)?;

    compare_series(format!("s3.degenerate[c={c},s={s},t={t}]"), &lhs, &rhs, order).map(|mut r| {
        r.elapsed = start.elapsed();
        r
    })
}
