//! Catalog of every identity under verification: the eight sum-side
//! generating functions, their closed forms, the Bailey-pair machinery, and
//! the double-sum and theta identities, together with the engine that
//! compares two sides coefficient-by-coefficient to a truncation order.

mod bailey;
mod bilateral;
mod closed;
mod families;
mod s3;

pub use bailey::{
    bailey_alpha, bailey_beta, bailey_def_check, bailey_lemma_check, eq21_check, pf_decomp_check,
};
pub use bilateral::{BilateralDenom, BilateralTerm, RemarkVariant, bilateral_sum, remark_f_series};
pub use closed::{and5_rhs_with_inner_sum, andrews_sum_bilateral_form};
pub use families::sum_side;
pub use s3::s3_degenerate_check;

use std::fmt;
use std::time::{Duration, Instant};

use crate::partitions::ParityClass;
use crate::series::{QSeries, Rational, SeriesError, Sign};

/// The cataloged identities: each tag has exactly one left-hand and one
/// right-hand builder. Parameterized checks (Eq. (2.1) specializations, the
/// Bailey pair relation and lemma, the degenerate quadratic form) are
/// standalone functions instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    And1OuEu,
    And2OdEu,
    And3OuEd,
    And4EuOu,
    And5EdOu,
    And6EuOd,
    Thm1OdEd,
    Thm1EdOd,
    Thm1EdOu,
    RemarkF,
    PfDecomp,
    BilateralRecomb,
    S3DoubleSum,
    S3ThetaDiff,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::And1OuEu,
        IdentityId::And2OdEu,
        IdentityId::And3OuEd,
        IdentityId::And4EuOu,
        IdentityId::And5EdOu,
        IdentityId::And6EuOd,
        IdentityId::Thm1OdEd,
        IdentityId::Thm1EdOd,
        IdentityId::Thm1EdOu,
        IdentityId::RemarkF,
        IdentityId::PfDecomp,
        IdentityId::BilateralRecomb,
        IdentityId::S3DoubleSum,
        IdentityId::S3ThetaDiff,
    ];

    /// Stable tag, used by the CLI and report files.
    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::And1OuEu => "and1.ou_eu",
            IdentityId::And2OdEu => "and2.od_eu",
            IdentityId::And3OuEd => "and3.ou_ed",
            IdentityId::And4EuOu => "and4.eu_ou",
            IdentityId::And5EdOu => "and5.ed_ou",
            IdentityId::And6EuOd => "and6.eu_od",
            IdentityId::Thm1OdEd => "thm1.od_ed",
            IdentityId::Thm1EdOd => "thm1.ed_od",
            IdentityId::Thm1EdOu => "thm1.ed_ou",
            IdentityId::RemarkF => "remark.f",
            IdentityId::PfDecomp => "pf.decomp",
            IdentityId::BilateralRecomb => "bilateral.recomb",
            IdentityId::S3DoubleSum => "s3.double_sum",
            IdentityId::S3ThetaDiff => "s3.theta_diff",
        }
    }

    pub fn from_tag(tag: &str) -> Option<IdentityId> {
        IdentityId::ALL.iter().copied().find(|id| id.tag() == tag)
    }

    /// The partition family whose sum side is this identity's left-hand
    /// side, if any, together with the argument it is evaluated at.
    pub fn family(self) -> Option<(ParityClass, Sign)> {
        match self {
            IdentityId::And1OuEu => Some((ParityClass::OU_EU, Sign::Plus)),
            IdentityId::And2OdEu => Some((ParityClass::OD_EU, Sign::Plus)),
            IdentityId::And3OuEd => Some((ParityClass::OU_ED, Sign::Minus)),
            IdentityId::And4EuOu => Some((ParityClass::EU_OU, Sign::Plus)),
            IdentityId::And5EdOu => Some((ParityClass::ED_OU, Sign::Minus)),
            IdentityId::And6EuOd => Some((ParityClass::EU_OD, Sign::Minus)),
            IdentityId::Thm1OdEd => Some((ParityClass::OD_ED, Sign::Plus)),
            IdentityId::Thm1EdOd => Some((ParityClass::ED_OD, Sign::Plus)),
            IdentityId::Thm1EdOu => Some((ParityClass::ED_OU, Sign::Minus)),
            _ => None,
        }
    }

    /// Verification order used when the caller does not pick one: 200 for the
    /// univariate identities, 80 for the double-sum checks.
    pub fn default_order(self) -> usize {
        match self {
            IdentityId::S3DoubleSum | IdentityId::S3ThetaDiff => 80,
            _ => 200,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// First disagreeing coefficient between two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of comparing two sides up to an order. `first_mismatch` is present
/// exactly when the status is a mismatch.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// Identity tag or parameterized descriptor such as `eq21[x=-1,y=-q,m=2]`.
    pub id: String,
    pub order: usize,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.verified() { "verified" } else { "mismatch" }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(
                f,
                "{}: verified to order {} ({} ms)",
                self.id,
                self.order,
                self.elapsed.as_millis()
            ),
            Some(m) => write!(
                f,
                "{}: mismatch at q^{} (lhs {}, rhs {}) to order {} ({} ms)",
                self.id,
                m.exponent,
                m.lhs,
                m.rhs,
                self.order,
                self.elapsed.as_millis()
            ),
        }
    }
}

/// Errors from catalog builders and checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    /// A sum failed to reach terms of valuation beyond the order within the
    /// hard term budget.
    DivergenceGuard { label: String, terms: usize },
    /// A parameterized check was called with parameters outside its domain.
    InvalidSpecialization(String),
    /// A lattice or bilateral term produced a negative exponent, which would
    /// mean a transcription error.
    NegativeExponent { label: String, exponent: i64 },
    Series(SeriesError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::DivergenceGuard { label, terms } => {
                write!(f, "{label}: {terms} terms without the valuation passing the order")
            }
            CatalogError::InvalidSpecialization(reason) => {
                write!(f, "invalid specialization: {reason}")
            }
            CatalogError::NegativeExponent { label, exponent } => {
                write!(f, "{label}: negative exponent {exponent}")
            }
            CatalogError::Series(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CatalogError {}

impl From<SeriesError> for CatalogError {
    fn from(e: SeriesError) -> CatalogError {
        CatalogError::Series(e)
    }
}

/// Truncated sum of a series-valued sequence: terms are accumulated until
/// three consecutive terms have valuation beyond the order (every sum in the
/// catalog has quadratically growing valuation, so the window of three guards
/// against non-monotone behavior near the boundary). The hard budget of
/// `10 * (order + 10)` terms turns a wrong exponent formula into an error
/// instead of a hang.
pub(crate) fn sum_terms<F>(
    order: usize,
    label: &str,
    mut term: F,
) -> Result<QSeries, CatalogError>
where
    F: FnMut(usize) -> Result<QSeries, CatalogError>,
{
    let cap = 10 * (order + 10);
    let mut acc = QSeries::zero(order);
    let mut quiet = 0usize;
    let mut index = 0usize;
    while quiet < 3 {
        if index >= cap {
            return Err(CatalogError::DivergenceGuard { label: label.to_string(), terms: cap });
        }
        let t = term(index)?;
        match t.valuation() {
            Some(v) if v <= order => {
                quiet = 0;
                acc = acc.add(&t);
            }
            _ => quiet += 1,
        }
        index += 1;
    }
    Ok(acc)
}

/// Compare two prebuilt sides; the smallest mismatching exponent (if any)
/// becomes the report's `first_mismatch`.
pub fn compare_series(
    id: impl Into<String>,
    lhs: &QSeries,
    rhs: &QSeries,
    order: usize,
) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    let report = compare_with_start(id, lhs, rhs, order, start)?;
    Ok(report)
}

fn compare_with_start(
    id: impl Into<String>,
    lhs: &QSeries,
    rhs: &QSeries,
    order: usize,
    start: Instant,
) -> Result<VerificationReport, CatalogError> {
    let first_mismatch = lhs.first_mismatch_up_to(rhs, order)?.map(|exponent| Mismatch {
        exponent,
        lhs: lhs.coeff(exponent).expect("within order").clone(),
        rhs: rhs.coeff(exponent).expect("within order").clone(),
    });
    Ok(VerificationReport { id: id.into(), order, first_mismatch, elapsed: start.elapsed() })
}

/// The identity's left-hand side, truncated at `order`.
///
/// For the sum-side families this evaluates the §-style sum directly; the
/// identities stated at argument `-q` build the family at `q` and substitute
/// afterwards.
pub fn lhs_series(id: IdentityId, order: usize) -> Result<QSeries, CatalogError> {
    if let Some((class, sign)) = id.family() {
        let base = families::sum_side(class, order)?;
        return Ok(match sign {
            Sign::Plus => base,
            Sign::Minus => base.compose_power(Sign::Minus, 1),
        });
    }
    match id {
        IdentityId::RemarkF => bilateral::remark_f_series(RemarkVariant::Eulerian, order),
        IdentityId::PfDecomp => bailey::pf_summed_product_form(order),
        IdentityId::BilateralRecomb => bailey::pf_summed_decomposed_form(order),
        IdentityId::S3DoubleSum => {
            Ok(families::sum_side(ParityClass::ED_OD, order)?.compose_power(Sign::Minus, 1))
        }
        IdentityId::S3ThetaDiff => s3::theta_diff_lattice_sum(order),
        _ => unreachable!("family identities handled above"),
    }
}

/// The identity's right-hand side (closed form), truncated at `order`.
pub fn rhs_series(id: IdentityId, order: usize) -> Result<QSeries, CatalogError> {
    match id {
        IdentityId::And1OuEu => closed::and1_rhs(order),
        IdentityId::And2OdEu => closed::and2_rhs(order),
        IdentityId::And3OuEd => closed::and3_rhs(order),
        IdentityId::And4EuOu => closed::and4_rhs(order),
        IdentityId::And5EdOu => closed::and5_rhs(order),
        IdentityId::And6EuOd => closed::and6_rhs(order),
        IdentityId::Thm1OdEd => closed::thm1_oded_rhs(order),
        IdentityId::Thm1EdOd => closed::thm1_edod_rhs(order),
        IdentityId::Thm1EdOu => closed::thm1_edou_rhs(order),
        IdentityId::RemarkF => bilateral::remark_f_series(RemarkVariant::BilateralA, order),
        IdentityId::PfDecomp => bailey::pf_summed_decomposed_form(order),
        IdentityId::BilateralRecomb => bailey::recomb_bilateral_form(order),
        IdentityId::S3DoubleSum => s3::double_sum_rhs(order),
        IdentityId::S3ThetaDiff => s3::theta_diff_rhs(order),
    }
}

/// Build both sides and compare them up to `order`.
///
/// `RemarkF` is special: its `verify` covers all three representations of
/// the mock theta function (Eulerian against both bilateral forms), and the
/// reported mismatch is the earliest one across the pairwise comparisons.
pub fn verify(id: IdentityId, order: usize) -> Result<VerificationReport, CatalogError> {
    let start = Instant::now();
    if id == IdentityId::RemarkF {
        let eulerian = bilateral::remark_f_series(RemarkVariant::Eulerian, order)?;
        let a = bilateral::remark_f_series(RemarkVariant::BilateralA, order)?;
        let b = bilateral::remark_f_series(RemarkVariant::BilateralB, order)?;
        let against_a = compare_with_start(id.tag(), &eulerian, &a, order, start)?;
        let against_b = compare_with_start(id.tag(), &eulerian, &b, order, start)?;
        let earliest = match (&against_a.first_mismatch, &against_b.first_mismatch) {
            (Some(x), Some(y)) => {
                if x.exponent <= y.exponent {
                    against_a
                } else {
                    against_b
                }
            }
            (Some(_), None) => against_a,
            _ => against_b,
        };
        return Ok(earliest);
    }
    let lhs = lhs_series(id, order)?;
    let rhs = rhs_series(id, order)?;
    compare_with_start(id.tag(), &lhs, &rhs, order, start)
}

/// Aggregate several comparisons into one report: the first failing
/// comparison wins.
pub fn aggregate_reports(
    id: impl Into<String>,
    order: usize,
    start: Instant,
    reports: Vec<VerificationReport>,
) -> VerificationReport {
    let first_mismatch = reports.into_iter().find_map(|r| r.first_mismatch);
    VerificationReport { id: id.into(), order, first_mismatch, elapsed: start.elapsed() }
}
