//! Machine-readable report format. Rationals are serialized as exact strings
//! (`"p/q"`, or just `"p"` for integers) so nothing is ever rounded.

use qpp_core::Rational;
use qpp_core::catalog::VerificationReport;
use serde::{Deserialize, Serialize};

/// One verification outcome, as emitted by `qpp verify` and `qpp verify-all`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub id: String,
    pub order: usize,
    pub status: String,
    pub first_mismatch: Option<MismatchJson>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
}

impl ReportJson {
    pub fn from_report(report: &VerificationReport) -> ReportJson {
        ReportJson {
            id: report.id.clone(),
            order: report.order,
            status: report.status().to_string(),
            first_mismatch: report.first_mismatch.as_ref().map(|m| MismatchJson {
                exponent: m.exponent,
                lhs: rational_str(&m.lhs),
                rhs: rational_str(&m.rhs),
            }),
            elapsed_ms: report.elapsed.as_millis() as u64,
        }
    }

    /// CSV row matching [`csv_header`].
    pub fn csv_row(&self) -> String {
        match &self.first_mismatch {
            None => format!("{},{},{},,,,{}", self.id, self.order, self.status, self.elapsed_ms),
            Some(m) => format!(
                "{},{},{},{},{},{},{}",
                self.id, self.order, self.status, m.exponent, m.lhs, m.rhs, self.elapsed_ms
            ),
        }
    }
}

pub fn csv_header() -> &'static str {
    "id,order,status,mismatch_exponent,lhs,rhs,elapsed_ms"
}

/// Exact textual form of a rational: `"p"` when integral, else `"p/q"`.
pub fn rational_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
