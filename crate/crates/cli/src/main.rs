//! `qpp`: coefficient tables, partition oracles, identity verification, and
//! expression evaluation over exact rational q-series.
//!
//! Exit codes: 0 on success (all identities verified), 1 when a verification
//! reports a mismatch (the report is still emitted), 2 on usage or parse
//! errors.

mod report;
mod tags;

use std::process::ExitCode;
use std::sync::Mutex;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use qpp_core::ParityClass;
use qpp_core::expr;
use qpp_core::partitions;
use qpp_core::catalog::{self, VerificationReport};

use report::{ReportJson, csv_header, rational_str};

#[derive(Parser)]
#[command(name = "qpp", version, about = "Exact q-series engine for parity-separated partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a family's generating function (sum side).
    Coeffs {
        /// Family tag: ou_eu, od_eu, ou_ed, od_ed, eu_ou, ed_ou, eu_od, ed_od.
        #[arg(long)]
        family: String,
        /// Truncation order (inclusive).
        #[arg(long, env = "QPP_DEFAULT_ORDER", default_value_t = 40, value_parser = order_in_range)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print brute-force partition counts for a family.
    Oracle {
        #[arg(long)]
        family: String,
        /// Largest n to count.
        #[arg(long, env = "QPP_DEFAULT_ORDER", default_value_t = 40, value_parser = order_in_range)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Verify one identity to a truncation order.
    Verify {
        /// Identity tag, e.g. thm1.od_ed or bailey.lemma.
        #[arg(long)]
        id: String,
        /// Truncation order; defaults per identity (200/150/100/80/60).
        #[arg(long, env = "QPP_DEFAULT_ORDER", value_parser = order_in_range)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Verify every cataloged identity; reports are sorted by tag.
    VerifyAll {
        #[arg(long, env = "QPP_DEFAULT_ORDER", value_parser = order_in_range)]
        order: Option<usize>,
        /// Worker threads; output is identical for any value.
        #[arg(long, default_value_t = 1, value_parser = order_in_range)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Test hook: perturb the named identity's right-hand side by +q.
        #[arg(long, hide = true)]
        inject_bad: Option<String>,
    },
    /// Parse and evaluate an expression to a truncated series.
    Eval {
        /// Expression text, e.g. "1/(1-q^1)".
        #[arg(long)]
        expr: String,
        #[arg(long, env = "QPP_DEFAULT_ORDER", default_value_t = 20, value_parser = order_in_range)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

fn order_in_range(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    if n == 0 {
        return Err("must be at least 1".to_string());
    }
    Ok(n)
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Coeffs { family, order, format } => coeffs(&family, order, format),
        Command::Oracle { family, order, format } => oracle(&family, order, format),
        Command::Verify { id, order, format } => verify(&id, order, format),
        Command::VerifyAll { order, jobs, format, inject_bad } => {
            verify_all(order, jobs, format, inject_bad.as_deref())
        }
        Command::Eval { expr, order, format } => eval(&expr, order, format),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

/// Write to stdout, tolerating a closed pipe: `qpp ... | head` must not
/// panic. On a broken pipe the process dies with the conventional 141.
fn emit(text: impl AsRef<str>) {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    let outcome = out.write_all(text.as_ref().as_bytes()).and_then(|_| out.flush());
    if let Err(e) = outcome {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(141);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(i32::from(EXIT_USAGE));
    }
}

fn family_or_exit(name: &str) -> Result<ParityClass, ExitCode> {
    ParityClass::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = ParityClass::ALL.iter().map(|c| c.name()).collect();
        usage_error(format!(
            "unknown family '{name}' (one of: {})",
            names.join(", ")
        ))
    })
}

/// Shared printer for coefficient tables: `label` names the source in JSON.
fn print_coefficients(
    label: &str,
    value: &str,
    order: usize,
    coefficients: Vec<String>,
    format: Format,
) {
    match format {
        Format::Plain => emit(format!("{}\n", coefficients.join(", "))),
        Format::Csv => {
            let mut text = String::from("n,coefficient\n");
            for (n, c) in coefficients.iter().enumerate() {
                text.push_str(&format!("{n},{c}\n"));
            }
            emit(text);
        }
        Format::Json => {
            let doc = serde_json::json!({
                label: value,
                "order": order,
                "coefficients": coefficients,
            });
            emit(format!("{doc}\n"));
        }
    }
}

fn coeffs(family: &str, order: usize, format: Format) -> ExitCode {
    let class = match family_or_exit(family) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let series = match catalog::sum_side(class, order) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let coefficients = series.coeffs().iter().map(rational_str).collect();
    print_coefficients("family", family, order, coefficients, format);
    ExitCode::SUCCESS
}

fn oracle(family: &str, order: usize, format: Format) -> ExitCode {
    let class = match family_or_exit(family) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let coefficients =
        (0..=order).map(|n| partitions::count(class, n).to_string()).collect();
    print_coefficients("family", family, order, coefficients, format);
    ExitCode::SUCCESS
}

fn print_report(report: &VerificationReport, format: Format) {
    let json = ReportJson::from_report(report);
    match format {
        Format::Plain => emit(format!("{report}\n")),
        Format::Csv => emit(format!("{}\n{}\n", csv_header(), json.csv_row())),
        Format::Json => {
            emit(format!("{}\n", serde_json::to_string(&json).expect("serializable")))
        }
    }
}

fn verify(id: &str, order: Option<usize>, format: Format) -> ExitCode {
    if !tags::is_runnable(id) {
        return usage_error(format!(
            "unknown identity tag '{id}' (one of: {})",
            tags::runnable_tags().join(", ")
        ));
    }
    let order = order.unwrap_or_else(|| tags::default_order(id));
    match tags::run(id, order, false) {
        Ok(report) => {
            print_report(&report, format);
            if report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(e) => usage_error(e),
    }
}

fn verify_all(
    order: Option<usize>,
    jobs: usize,
    format: Format,
    inject_bad: Option<&str>,
) -> ExitCode {
    let all_tags = tags::runnable_tags();
    if let Some(bad) = inject_bad
        && qpp_core::IdentityId::from_tag(bad).is_none()
    {
        return usage_error(format!(
            "--inject-bad expects a cataloged identity tag, got '{bad}'"
        ));
    }

    let results: Mutex<Vec<Option<Result<VerificationReport, catalog::CatalogError>>>> =
        Mutex::new(vec![None; all_tags.len()]);
    let next = AtomicUsize::new(0);
    let workers = jobs.min(all_tags.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= all_tags.len() {
                        break;
                    }
                    let tag = all_tags[i];
                    let n = order.unwrap_or_else(|| tags::default_order(tag));
                    let inject = inject_bad == Some(tag);
                    let outcome = tags::run(tag, n, inject);
                    results.lock().expect("no worker panicked")[i] = Some(outcome);
                }
            });
        }
    });

    let mut reports = Vec::with_capacity(all_tags.len());
    for (i, slot) in results.into_inner().expect("no panics").into_iter().enumerate() {
        match slot.expect("every tag was processed") {
            Ok(r) => reports.push(r),
            Err(e) => return usage_error(format!("{}: {e}", all_tags[i])),
        }
    }
    reports.sort_by(|a, b| a.id.cmp(&b.id));

    let any_mismatch = reports.iter().any(|r| !r.verified());
    match format {
        Format::Plain => {
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{r}\n"));
            }
            emit(text);
        }
        Format::Csv => {
            let mut text = format!("{}\n", csv_header());
            for r in &reports {
                text.push_str(&ReportJson::from_report(r).csv_row());
                text.push('\n');
            }
            emit(text);
        }
        Format::Json => {
            let docs: Vec<ReportJson> = reports.iter().map(ReportJson::from_report).collect();
            emit(format!("{}\n", serde_json::to_string_pretty(&docs).expect("serializable")));
        }
    }
    if any_mismatch {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn eval(text: &str, order: usize, format: Format) -> ExitCode {
    let parsed = match expr::parse(text) {
        Ok(e) => e,
        Err(e) => return usage_error(e),
    };
    let series = match expr::eval(&parsed, order) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let coefficients = series.coeffs().iter().map(rational_str).collect();
    print_coefficients("expr", text, order, coefficients, format);
    ExitCode::SUCCESS
}
