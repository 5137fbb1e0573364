//! The q-series identity behind Theorem 1's first two parts, the Bailey pair
//! and limiting Bailey lemma behind the third, the partial-fraction step, and
//! the bilateral recombination.

use std::time::Instant;

use super::{CatalogError, VerificationReport, aggregate_reports, bilateral, compare_series,
            sum_terms};
use crate::products::{
    MonomialArg, inv_one_plus_pow, poch_finite, poch_finite_inverse, poch_inf, poch_inf_inverse,
};
use crate::series::{QSeries, Sign, rat, ratio};

fn fmt_monomial(a: MonomialArg) -> String {
    match (a.sign, a.exponent) {
        (Sign::Plus, 0) => "1".to_string(),
        (Sign::Minus, 0) => "-1".to_string(),
        (Sign::Plus, 1) => "q".to_string(),
        (Sign::Minus, 1) => "-q".to_string(),
        (Sign::Plus, r) => format!("q^{r}"),
        (Sign::Minus, r) => format!("-q^{r}"),
    }
}

/// Check the identity
/// `sum_{n>=0} (x;q)_n q^n/(y;q)_n
///    = q(x;q)_inf / (y (y;q)_inf (1 - xq/y)) + (1 - q/y)/(1 - xq/y)`
/// with `q -> q^m` and monomial arguments `x`, `y`, by evaluating both sides
/// independently to `order`.
pub fn eq21_check(
    x: MonomialArg,
    y: MonomialArg,
    m: usize,
    order: usize,
) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    if m == 0 {
        return Err(CatalogError::InvalidSpecialization("the base q^m needs m >= 1".into()));
    }
    if y == MonomialArg::q_pow(0) {
        return Err(CatalogError::InvalidSpecialization(
            "y = 1 makes (y;q^m)_inf vanish".into(),
        ));
    }
    if y.exponent > m {
        return Err(CatalogError::InvalidSpecialization(format!(
            "q^{m}/y has negative exponent for y = {}",
            fmt_monomial(y)
        )));
    }
    // q^m / y = c1 q^{e1};  x q^m / y = c2 q^{e2}.
    let c1 = y.sign;
    let e1 = m - y.exponent;
    let c2 = match (x.sign, y.sign) {
        (Sign::Plus, Sign::Plus) | (Sign::Minus, Sign::Minus) => Sign::Plus,
        _ => Sign::Minus,
    };
    let e2 = x.exponent + m - y.exponent;
    if e2 == 0 && c2 == Sign::Plus {
        return Err(CatalogError::InvalidSpecialization(
            "1 - xq^m/y has zero constant term".into(),
        ));
    }

    let label = format!("eq21[x={},y={},m={m}]", fmt_monomial(x), fmt_monomial(y));

    let lhs = sum_terms(order, &label, |n| {
        let body = poch_finite(x, m, n, order)
            .mul(&poch_finite_inverse(y, m, n, order)?);
        Ok(body.shift(m * n))
    })?;

    let denominator = |s: QSeries| s.div_one_minus_monomial(&c2.to_rational(), e2);
    let first = denominator(
        QSeries::monomial(c1.to_rational(), e1, order)
            .mul(&poch_inf(x, m, order))
            .mul(&poch_inf_inverse(y, m, order)?),
    )?;
    let second = denominator(
        QSeries::one(order).mul_one_minus_monomial(&c1.to_rational(), e1),
    )?;
    let rhs = first.add(&second);

    compare_series(label, &lhs, &rhs, order).map(|mut r| {
        r.elapsed = start.elapsed();
        r
    })
}

/// `beta'_n = 1 / ((-q;q)_n^2 (1+q^{n+1}))` from the Bailey pair in use.
pub fn bailey_beta(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    let inv = poch_finite_inverse(MonomialArg::neg_q_pow(1), 1, n, order)?;
    Ok(inv.mul(&inv).mul(&inv_one_plus_pow(n + 1, order)?))
}

/// `alpha'_n = 2 (-1)^n q^{n(n+1)/2} (1-q^{2n+1}) / ((1-q)(1+q^n)(1+q^{n+1}))`.
pub fn bailey_alpha(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    let c = if n.is_multiple_of(2) { rat(2) } else { rat(-2) };
    let s = QSeries::one(order)
        .mul_one_minus_monomial(&rat(1), 2 * n + 1)
        .div_one_minus_monomial(&rat(1), 1)?
        .div_one_minus_monomial(&rat(-1), n)?
        .div_one_minus_monomial(&rat(-1), n + 1)?;
    Ok(s.scale(&c).shift(n * (n + 1) / 2))
}

/// Check the defining Bailey-pair relation
/// `beta_n = sum_{j=0}^n alpha_j / ((q;q)_{n-j} (q^2;q)_{n+j})`
/// for every `n <= n_max`, as series to `order`.
pub fn bailey_def_check(n_max: usize, order: usize) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    let mut reports = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lhs = bailey_beta(n, order)?;
        let mut rhs = QSeries::zero(order);
        for j in 0..=n {
            let term = bailey_alpha(j, order)?
                .mul(&poch_finite_inverse(MonomialArg::q_pow(1), 1, n - j, order)?)
                .mul(&poch_finite_inverse(MonomialArg::q_pow(2), 1, n + j, order)?);
            rhs = rhs.add(&term);
        }
        reports.push(compare_series(format!("bailey.def[n={n}]"), &lhs, &rhs, order)?);
    }
    Ok(aggregate_reports(format!("bailey.def[n_max={n_max}]"), order, start, reports))
}

/// `sum_{n>=0} q^{n^2+n} beta'_n`; this is Andrews' sum in disguise.
fn weighted_beta_sum(order: usize) -> Result<QSeries, CatalogError> {
    sum_terms(order, "sum q^{n^2+n} beta_n", |n| {
        if n * (n + 1) > order {
            return Ok(QSeries::zero(order));
        }
        Ok(bailey_beta(n, order)?.shift(n * (n + 1)))
    })
}

/// `sum_{n>=0} q^{n^2+n} alpha'_n`; each summand has valuation `3n(n+1)/2`.
fn weighted_alpha_sum(order: usize) -> Result<QSeries, CatalogError> {
    sum_terms(order, "sum q^{n^2+n} alpha_n", |n| {
        if 3 * n * (n + 1) / 2 > order {
            return Ok(QSeries::zero(order));
        }
        Ok(bailey_alpha(n, order)?.shift(n * (n + 1)))
    })
}

/// Check the limiting form of Bailey's lemma on the pair in use,
/// `sum q^{n^2+n} beta_n = (1/(q^2;q)_inf) sum q^{n^2+n} alpha_n`,
/// plus the final recombination of the proof: the alpha sum equals
/// `(2/(1-q))` times the bilateral form.
pub fn bailey_lemma_check(order: usize) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    let beta_sum = weighted_beta_sum(order)?;
    let alpha_sum = weighted_alpha_sum(order)?;
    let rhs = poch_inf_inverse(MonomialArg::q_pow(2), 1, order)?.mul(&alpha_sum);
    let lemma = compare_series("bailey.lemma[transform]", &beta_sum, &rhs, order)?;

    let bilateral = recomb_bilateral_form(order)?;
    let recombined = bilateral.scale(&rat(2)).div_one_minus_monomial(&rat(1), 1)?;
    let recomb = compare_series("bailey.lemma[recombination]", &alpha_sum, &recombined, order)?;

    Ok(aggregate_reports("bailey.lemma", order, start, vec![lemma, recomb]))
}

/// Check the partial fraction decomposition
/// `(1-q^{2n+1}) / ((1+q^n)(1+q^{n+1})) = 1/(1+q^n) - q^{n+1}/(1+q^{n+1})`
/// for each `n <= n_max`.
pub fn pf_decomp_check(n_max: usize, order: usize) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    let mut reports = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        reports.push(compare_series(
            format!("pf.decomp[n={n}]"),
            &pf_product_term(n, order)?,
            &pf_decomposed_term(n, order)?,
            order,
        )?);
    }
    Ok(aggregate_reports(format!("pf.decomp[n_max={n_max}]"), order, start, reports))
}

/// `1/(1+q^n)`, with the `n = 0` case the exact constant `1/2`.
fn one_over_one_plus_pow(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    Ok(if n == 0 {
        QSeries::monomial(ratio(1, 2), 0, order)
    } else {
        inv_one_plus_pow(n, order)?
    })
}

fn pf_product_term(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    Ok(QSeries::one(order)
        .mul_one_minus_monomial(&rat(1), 2 * n + 1)
        .mul(&one_over_one_plus_pow(n, order)?)
        .mul(&inv_one_plus_pow(n + 1, order)?))
}

fn pf_decomposed_term(n: usize, order: usize) -> Result<QSeries, CatalogError> {
    Ok(one_over_one_plus_pow(n, order)?
        .sub(&inv_one_plus_pow(n + 1, order)?.shift(n + 1)))
}

/// Catalog entry `pf.decomp`, left side: the §2 sum with each summand in
/// product form, `sum_{n>=0} (-1)^n q^{3n(n+1)/2} (1-q^{2n+1}) / ((1+q^n)(1+q^{n+1}))`.
pub(super) fn pf_summed_product_form(order: usize) -> Result<QSeries, CatalogError> {
    signed_theta_weighted(order, "pf product form", pf_product_term)
}

/// Catalog entry `pf.decomp`, right side (and `bilateral.recomb` left side):
/// the same sum with each summand decomposed.
pub(super) fn pf_summed_decomposed_form(order: usize) -> Result<QSeries, CatalogError> {
    signed_theta_weighted(order, "pf decomposed form", pf_decomposed_term)
}

fn signed_theta_weighted(
    order: usize,
    label: &str,
    term: impl Fn(usize, usize) -> Result<QSeries, CatalogError>,
) -> Result<QSeries, CatalogError> {
    sum_terms(order, label, |n| {
        let e = 3 * n * (n + 1) / 2;
        if e > order {
            return Ok(QSeries::zero(order));
        }
        let t = term(n, order)?.shift(e);
        Ok(if n % 2 == 0 { t } else { t.neg() })
    })
}

/// Catalog entry `bilateral.recomb`, right side: the recombined bilateral sum
/// `sum_{n in Z} (-1)^n q^{3n(n+1)/2} / (1+q^n)`.
pub(super) fn recomb_bilateral_form(order: usize) -> Result<QSeries, CatalogError> {
    bilateral::bilateral_sum(order, "recombined bilateral", |n| 3 * n * (n + 1) / 2)
}
