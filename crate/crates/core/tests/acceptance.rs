//! Acceptance suite: one test per criterion, exact equality throughout
//! (integer/rational arithmetic, tolerance zero). Each test prints a
//! `ACCEPTANCE <n> <name>: pass` line on success; a failure carries the
//! first mismatching exponent in its panic message.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qpp_core::catalog::{
    self, IdentityId, RemarkVariant, VerificationReport, bilateral_sum, compare_series,
    remark_f_series, sum_side,
};
use qpp_core::expr::{self, Side, canonical_text};
use qpp_core::partitions::{self, ParityClass};
use qpp_core::products::{self, MonomialArg};
use qpp_core::series::{QSeries, Sign, rat};

fn assert_verified(report: &VerificationReport) {
    assert!(report.verified(), "expected verification: {report}");
}

#[test]
fn criterion_1_oracle_agreement() {
    let start = Instant::now();
    for class in ParityClass::ALL {
        let series = sum_side(class, 40).expect("sum side builds");
        for n in 0..=40 {
            let counted = rat(partitions::count(class, n) as i64);
            assert_eq!(
                series.coeff(n).unwrap(),
                &counted,
                "family {} disagrees with the enumerator at n = {n}",
                class.name()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "oracle agreement took {elapsed:?}");
    println!("ACCEPTANCE 1 oracle-agreement: pass ({} ms)", elapsed.as_millis());
}

#[test]
fn criterion_2_closed_form_identities() {
    let ids = [
        IdentityId::And1OuEu,
        IdentityId::And2OdEu,
        IdentityId::And3OuEd,
        IdentityId::And4EuOu,
        IdentityId::And5EdOu,
        IdentityId::And6EuOd,
        IdentityId::Thm1OdEd,
        IdentityId::Thm1EdOd,
        IdentityId::Thm1EdOu,
    ];
    for id in ids {
        let report = catalog::verify(id, 200).expect("builders succeed");
        assert_verified(&report);
        assert!(
            report.elapsed < Duration::from_secs(5),
            "{id} took {:?}",
            report.elapsed
        );
    }
    println!("ACCEPTANCE 2 closed-form-identities: pass (9 identities at order 200)");
}

#[test]
fn criterion_3_remark_suite() {
    let start = Instant::now();
    let eulerian = remark_f_series(RemarkVariant::Eulerian, 200).unwrap();
    let a = remark_f_series(RemarkVariant::BilateralA, 200).unwrap();
    let b = remark_f_series(RemarkVariant::BilateralB, 200).unwrap();
    for (label, lhs, rhs) in [
        ("eulerian vs bilateral-a", &eulerian, &a),
        ("eulerian vs bilateral-b", &eulerian, &b),
        ("bilateral-a vs bilateral-b", &a, &b),
    ] {
        assert_eq!(
            lhs.first_mismatch_up_to(rhs, 200).unwrap(),
            None,
            "f(q) representations disagree: {label}"
        );
    }
    let pentagonal = products::pentagonal(500);
    let euler = products::poch_inf(MonomialArg::q_pow(1), 1, 500);
    assert_eq!(pentagonal.first_mismatch_up_to(&euler, 500).unwrap(), None);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "remark suite took {elapsed:?}");
    println!("ACCEPTANCE 3 remark-suite: pass ({} ms)", elapsed.as_millis());
}

#[test]
fn criterion_4_bailey_machinery() {
    assert_verified(&catalog::bailey_def_check(25, 150).unwrap());
    assert_verified(&catalog::bailey_lemma_check(150).unwrap());
    assert_verified(&catalog::pf_decomp_check(30, 100).unwrap());
    assert_verified(&catalog::verify(IdentityId::BilateralRecomb, 150).unwrap());

    // Consistency chain: substituting the recombined bilateral form for
    // Andrews' sum inside the classical closed form reproduces the
    // Theorem 1 closed form.
    let replaced = catalog::and5_rhs_with_inner_sum(
        &catalog::andrews_sum_bilateral_form(150).unwrap(),
        150,
    )
    .unwrap();
    let direct = catalog::rhs_series(IdentityId::Thm1EdOu, 150).unwrap();
    assert_verified(&compare_series("consistency-chain", &replaced, &direct, 150).unwrap());
    println!("ACCEPTANCE 4 bailey-machinery: pass");
}

#[test]
fn criterion_5_eq21_specializations() {
    let instances = [
        (MonomialArg::neg_q_pow(0), MonomialArg::neg_q_pow(1), 2usize),
        (MonomialArg::neg_q_pow(1), MonomialArg::neg_q_pow(2), 2),
        (MonomialArg::q_pow(2), MonomialArg::q_pow(1), 1),
        (MonomialArg::neg_q_pow(3), MonomialArg::q_pow(1), 2),
    ];
    for (x, y, m) in instances {
        let report = catalog::eq21_check(x, y, m, 100).unwrap();
        assert_verified(&report);
    }
    println!("ACCEPTANCE 5 eq21-specializations: pass (2 paper + 2 generic at order 100)");
}

#[test]
fn criterion_6_section3_suite() {
    assert_verified(&catalog::verify(IdentityId::S3DoubleSum, 80).unwrap());
    assert_verified(&catalog::verify(IdentityId::S3ThetaDiff, 80).unwrap());
    for c in 1..=3usize {
        for t in [c + 1, c + 2] {
            let report = catalog::s3_degenerate_check(c, 1, t, 60).unwrap();
            assert_verified(&report);
        }
    }
    println!("ACCEPTANCE 6 section3-suite: pass");
}

#[test]
fn criterion_7_mismatch_detection() {
    let order = 100;
    let mut rng = StdRng::seed_from_u64(0x9_e3779b9);
    let mut sides: Vec<(IdentityId, QSeries, QSeries)> = Vec::new();
    for _ in 0..20 {
        let id = IdentityId::ALL[rng.random_range(0..IdentityId::ALL.len())];
        let k = rng.random_range(0..=order);
        let (lhs, rhs) = match sides.iter().find(|(cached, _, _)| *cached == id) {
            Some((_, l, r)) => (l.clone(), r.clone()),
            None => {
                let l = catalog::lhs_series(id, order).unwrap();
                let r = catalog::rhs_series(id, order).unwrap();
                sides.push((id, l.clone(), r.clone()));
                (l, r)
            }
        };
        let bump = QSeries::monomial(rat(1), k, order);
        let (lhs, rhs) = if rng.random_bool(0.5) {
            (lhs.add(&bump), rhs)
        } else {
            (lhs, rhs.add(&bump))
        };
        let report = compare_series(format!("{}+q^{k}", id.tag()), &lhs, &rhs, order).unwrap();
        let mismatch = report.first_mismatch.as_ref().unwrap_or_else(|| {
            panic!("{}: perturbation by q^{k} went undetected", id.tag())
        });
        assert_eq!(mismatch.exponent, k, "{}: wrong first mismatch", id.tag());
    }
    println!("ACCEPTANCE 7 mismatch-detection: pass (20 random perturbations)");
}

#[test]
fn criterion_8_dsl_round_trip() {
    // Every catalog tag and side round-trips through the textual form. The
    // RemarkF builders use the Eulerian (lhs) and first bilateral (rhs)
    // representations, matching their canonical texts.
    for id in IdentityId::ALL {
        for side in [Side::Lhs, Side::Rhs] {
            let text = canonical_text(id, side);
            let parsed = expr::parse(text)
                .unwrap_or_else(|e| panic!("{id} {side} does not parse: {e}"));
            let evaluated = expr::eval(&parsed, 60)
                .unwrap_or_else(|e| panic!("{id} {side} does not evaluate: {e}"));
            let built = match side {
                Side::Lhs => catalog::lhs_series(id, 60).unwrap(),
                Side::Rhs => catalog::rhs_series(id, 60).unwrap(),
            };
            assert_eq!(
                evaluated.first_mismatch_up_to(&built, 60).unwrap(),
                None,
                "{id} {side}: text and builder disagree"
            );
        }
    }

    // Parser totality: structured errors, never a crash, position in range.
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let alphabet: &[u8] = b"q^()+-*/ 0123456789sumbsopchinf_.,;=jnm";
    for i in 0..10_000 {
        let len = rng.random_range(0..64);
        let bytes: Vec<u8> = if i % 2 == 0 {
            (0..len).map(|_| rng.random::<u8>()).collect()
        } else {
            (0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect()
        };
        let text = String::from_utf8_lossy(&bytes).into_owned();
        if let Err(e) = expr::parse(&text) {
            assert!(e.position <= text.len(), "position {} past input {:?}", e.position, text);
        }
    }
    println!("ACCEPTANCE 8 dsl-round-trip: pass (28 texts, 10000 fuzz inputs)");
}

// Cross-cutting invariants that the criteria rely on.

#[test]
fn f_series_coefficients_are_nonnegative_integers() {
    for class in ParityClass::ALL {
        let s = sum_side(class, 60).unwrap();
        for (k, c) in s.coeffs().iter().enumerate() {
            assert!(c.is_integer() && c >= &rat(0), "{} at q^{k}: {c}", class.name());
        }
    }
}

#[test]
fn negated_families_match_signed_oracle_counts() {
    for id in [IdentityId::And3OuEd, IdentityId::And5EdOu, IdentityId::And6EuOd] {
        let (class, sign) = id.family().unwrap();
        assert_eq!(sign, Sign::Minus);
        let lhs = catalog::lhs_series(id, 30).unwrap();
        for n in 0..=30 {
            let c = partitions::count(class, n) as i64;
            let expect = if n % 2 == 0 { c } else { -c };
            assert_eq!(lhs.coeff(n).unwrap(), &rat(expect), "{id} at n = {n}");
        }
    }
}

#[test]
fn bilateral_center_terms_are_half() {
    let b = bilateral_sum(40, "acceptance", |n| n * (3 * n + 1) / 2).unwrap();
    assert_eq!(b.coeff(0).unwrap(), &qpp_core::series::ratio(1, 2));
}
