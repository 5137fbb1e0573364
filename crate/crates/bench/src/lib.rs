//! Shared fixtures for the criterion benches.

use qpp_core::series::{QSeries, ratio};

/// A dense series with varied small rational coefficients.
pub fn dense_series(order: usize) -> QSeries {
    let coeffs = (0..=order)
        .map(|k| ratio((k as i64 % 17) - 8, (k as i64 % 5) + 1))
        .collect();
    QSeries::from_coeffs(coeffs)
}
