//! Sum-side builders for the eight generating functions, straight from their
//! defining series. These are the normative definitions the combinatorial
//! oracle is checked against.
//!
//! Each summand is `q^{e(n)}` times a product of Pochhammer symbols whose
//! index moves with `n`, so consecutive summands differ by exactly two
//! binomial factors. The builder keeps the product part as running state and
//! applies those factor updates in linear time per term; the summand's
//! valuation is exactly `e(n)`, which bounds the loop.

use super::CatalogError;
use crate::partitions::{Parity, ParityClass};
use crate::products::{MonomialArg, poch_inf, poch_inf_inverse};
use crate::series::{QSeries, rat};

/// One step of running-product maintenance: multiply or divide by
/// `1 - sign*q^k`.
#[derive(Clone, Copy)]
enum Factor {
    /// `* (1 - q^k)`
    MulOneMinus(usize),
    /// `* (1 + q^k)`
    MulOnePlus(usize),
    /// `/ (1 - q^k)`
    DivOneMinus(usize),
    /// `/ (1 + q^k)`
    DivOnePlus(usize),
}

fn apply(body: QSeries, factor: Factor) -> Result<QSeries, CatalogError> {
    Ok(match factor {
        Factor::MulOneMinus(k) => body.mul_one_minus_monomial(&rat(1), k),
        Factor::MulOnePlus(k) => body.mul_one_minus_monomial(&rat(-1), k),
        Factor::DivOneMinus(k) => body.div_one_minus_monomial(&rat(1), k)?,
        Factor::DivOnePlus(k) => body.div_one_minus_monomial(&rat(-1), k)?,
    })
}

/// The family's generating function at argument `q`, truncated at `order`.
pub fn sum_side(class: ParityClass, order: usize) -> Result<QSeries, CatalogError> {
    use Factor::*;
    // For each family: the summand's leading exponent e(n) = stride*n +
    // offset, the product part at n = 0, and the two factor updates taking
    // the product part from n-1 to n.
    let (offset, initial, step): (usize, QSeries, fn(usize) -> [Factor; 2]) = match (
        class.larger_parity,
        class.larger_distinct,
        class.smaller_distinct,
    ) {
        // F^ou_eu: sum q^{2n} / ((q^2;q^2)_n (q^{2n+1};q^2)_inf)
        (Parity::Odd, false, false) => (
            0,
            poch_inf_inverse(MonomialArg::q_pow(1), 2, order)?,
            |n| [DivOneMinus(2 * n), MulOneMinus(2 * n - 1)],
        ),
        // F^od_eu: sum q^{2n} (-q^{2n+1};q^2)_inf / (q^2;q^2)_n
        (Parity::Odd, true, false) => (
            0,
            poch_inf(MonomialArg::neg_q_pow(1), 2, order),
            |n| [DivOneMinus(2 * n), DivOnePlus(2 * n - 1)],
        ),
        // F^ou_ed: sum (-q^2;q^2)_n q^{2n+2} / (q^{2n+3};q^2)_inf
        (Parity::Odd, false, true) => (
            2,
            poch_inf_inverse(MonomialArg::q_pow(3), 2, order)?,
            |n| [MulOnePlus(2 * n), MulOneMinus(2 * n + 1)],
        ),
        // F^od_ed: sum q^{2n+2} (-q^2;q^2)_n (-q^{2n+3};q^2)_inf
        (Parity::Odd, true, true) => (
            2,
            poch_inf(MonomialArg::neg_q_pow(3), 2, order),
            |n| [MulOnePlus(2 * n), DivOnePlus(2 * n + 1)],
        ),
        // F^eu_ou: sum q^{2n+1} / ((q;q^2)_{n+1} (q^{2n+2};q^2)_inf)
        (Parity::Even, false, false) => (
            1,
            poch_inf_inverse(MonomialArg::q_pow(2), 2, order)?
                .div_one_minus_monomial(&rat(1), 1)?,
            |n| [DivOneMinus(2 * n + 1), MulOneMinus(2 * n)],
        ),
        // F^ed_ou: sum q^{2n+1} (-q^{2n+2};q^2)_inf / (q;q^2)_{n+1}
        (Parity::Even, true, false) => (
            1,
            poch_inf(MonomialArg::neg_q_pow(2), 2, order)
                .div_one_minus_monomial(&rat(1), 1)?,
            |n| [DivOneMinus(2 * n + 1), DivOnePlus(2 * n)],
        ),
        // F^eu_od: sum q^{2n+1} (-q;q^2)_n / (q^{2n+2};q^2)_inf
        (Parity::Even, false, true) => (
            1,
            poch_inf_inverse(MonomialArg::q_pow(2), 2, order)?,
            |n| [MulOnePlus(2 * n - 1), MulOneMinus(2 * n)],
        ),
        // F^ed_od: sum q^{2n+1} (-q;q^2)_n (-q^{2n+2};q^2)_inf
        (Parity::Even, true, true) => (
            1,
            poch_inf(MonomialArg::neg_q_pow(2), 2, order),
            |n| [MulOnePlus(2 * n - 1), DivOnePlus(2 * n)],
        ),
    };

    let mut body = initial;
    let mut acc = QSeries::zero(order);
    let mut n = 0usize;
    while 2 * n + offset <= order {
        if n > 0 {
            for factor in step(n) {
                body = apply(body, factor)?;
            }
        }
        acc = acc.add(&body.shift(2 * n + offset));
        n += 1;
    }
    Ok(acc)
}
