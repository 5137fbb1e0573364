//! Registry of runnable verification tags: the fourteen cataloged identities
//! plus the parameterized checks under their stable names, each producing one
//! report.

use std::time::Instant;

use qpp_core::MonomialArg;
use qpp_core::catalog::{
    self, CatalogError, IdentityId, VerificationReport, aggregate_reports,
};
use qpp_core::series::{QSeries, rat};

/// Everything `verify-all` runs, in tag order.
pub fn runnable_tags() -> Vec<&'static str> {
    let mut tags: Vec<&'static str> = IdentityId::ALL.iter().map(|id| id.tag()).collect();
    tags.extend(["eq21", "bailey.def", "bailey.lemma", "s3.degenerate"]);
    tags.sort_unstable();
    tags
}

pub fn is_runnable(tag: &str) -> bool {
    runnable_tags().contains(&tag)
}

/// Default truncation order when neither `--order` nor the environment picks
/// one: 200 for univariate identities, 80 for the double-sum checks, 60 for
/// the degenerate-form grid, and the orders the Bailey machinery is specified
/// at.
pub fn default_order(tag: &str) -> usize {
    if let Some(id) = IdentityId::from_tag(tag) {
        return id.default_order();
    }
    match tag {
        "eq21" => 100,
        "bailey.def" | "bailey.lemma" => 150,
        "s3.degenerate" => 60,
        _ => 200,
    }
}

/// The Eq. (2.1) instances run under the `eq21` tag: the two specializations
/// used in the proofs plus two generic monomial instances.
pub fn eq21_instances() -> [(MonomialArg, MonomialArg, usize); 4] {
    [
        (MonomialArg::neg_q_pow(0), MonomialArg::neg_q_pow(1), 2),
        (MonomialArg::neg_q_pow(1), MonomialArg::neg_q_pow(2), 2),
        (MonomialArg::q_pow(2), MonomialArg::q_pow(1), 1),
        (MonomialArg::neg_q_pow(3), MonomialArg::q_pow(1), 2),
    ]
}

/// The (c, s, t) grid run under the `s3.degenerate` tag.
pub fn degenerate_grid() -> Vec<(usize, usize, usize)> {
    let mut grid = Vec::new();
    for c in 1..=3 {
        for t_off in 1..=2 {
            grid.push((c, 1, c + t_off));
        }
    }
    grid
}

const BAILEY_DEF_N_MAX: usize = 25;
const PF_DECOMP_N_MAX: usize = 30;

/// Run one tag at the given order. `inject_bad` perturbs the right-hand side
/// by `+q` before comparison (test hook; cataloged identities only).
pub fn run(tag: &str, order: usize, inject_bad: bool) -> Result<VerificationReport, CatalogError> {
    if let Some(id) = IdentityId::from_tag(tag) {
        let mut report = if inject_bad {
            let start = Instant::now();
            let lhs = catalog::lhs_series(id, order)?;
            let rhs = catalog::rhs_series(id, order)?.add(&QSeries::monomial(rat(1), 1, order));
            let mut r = catalog::compare_series(id.tag(), &lhs, &rhs, order)?;
            r.elapsed = start.elapsed();
            r
        } else {
            catalog::verify(id, order)?
        };
        if id == IdentityId::PfDecomp && !inject_bad {
            // The tag also covers the display's per-n decomposition.
            let start = Instant::now();
            let per_n = catalog::pf_decomp_check(PF_DECOMP_N_MAX, order)?;
            report = aggregate_reports(id.tag(), order, start, vec![report, per_n]);
        }
        return Ok(report);
    }
    let start = Instant::now();
    match tag {
        "eq21" => {
            let mut reports = Vec::new();
            for (x, y, m) in eq21_instances() {
                reports.push(catalog::eq21_check(x, y, m, order)?);
            }
            Ok(aggregate_reports("eq21", order, start, reports))
        }
        "bailey.def" => {
            let report = catalog::bailey_def_check(BAILEY_DEF_N_MAX, order)?;
            Ok(aggregate_reports("bailey.def", order, start, vec![report]))
        }
        "bailey.lemma" => catalog::bailey_lemma_check(order),
        "s3.degenerate" => {
            let mut reports = Vec::new();
            for (c, s, t) in degenerate_grid() {
                reports.push(catalog::s3_degenerate_check(c, s, t, order)?);
            }
            Ok(aggregate_reports("s3.degenerate", order, start, reports))
        }
        other => Err(CatalogError::InvalidSpecialization(format!(
            "unknown identity tag '{other}'"
        ))),
    }
}
