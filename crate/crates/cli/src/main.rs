use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use tn_cli::{compute_range, PolyRecord, DEFAULT_PREC, PREC_ENV};
use tn_core::classpoly::PolyResult;
use tn_core::quadform::is_squarefree;
use tn_core::rep::invariance::invariance_report;
use tn_core::{hilbert_polynomial, ramanujan_polynomial, selftest};

#[derive(Parser)]
#[command(name = "tnpoly", version, about = "Minimal polynomials of Ramanujan's class invariants t_n")]
struct Cli {
    /// Working precision in decimal digits [default: 120; Hilbert
    /// polynomials size it from the discriminant]
    #[arg(long, global = true, env = PREC_ENV)]
    prec: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal polynomial p_n of t_n, for n ≡ 11 mod 24
    Pn {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// p_n for every n ≡ 11 mod 24 in [from, to]
    PnRange {
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Hilbert class polynomial of a discriminant D ≡ 1 mod 4
    Hilbert {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Exact check that √3·R₂ is fixed by the unit generators of each class mod 72
    CheckInvariance,
    /// Oracle-based self checks
    Selftest,
}

/// A failure that ends the process with exit code 1.
struct Failure(String);

impl From<tn_core::Error> for Failure {
    fn from(e: tn_core::Error) -> Self {
        Failure(e.to_string())
    }
}

fn warn_if_not_squarefree(n: i64) {
    if n > 0 && !is_squarefree(n as u64) {
        eprintln!("warning: {n} is not squarefree; Z[θ] is not the maximal order");
    }
}

/// Text: one polynomial per line, prefixed by n in a table. JSON: a single
/// object, or an array for tables.
fn emit_polys(format: Format, records: &[(PolyRecord, String)], table: bool) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for (rec, text) in records {
                match rec.n {
                    Some(n) if table => println!("{n}\t{text}"),
                    _ => println!("{text}"),
                }
            }
        }
        Format::Json => {
            let out = if !table {
                serde_json::to_string_pretty(&records[0].0)
            } else {
                let recs: Vec<&PolyRecord> = records.iter().map(|(r, _)| r).collect();
                serde_json::to_string_pretty(&recs)
            };
            println!("{}", out.map_err(|e| Failure(e.to_string()))?);
        }
    }
    Ok(())
}

fn record(n: Option<i64>, disc: i64, r: &PolyResult) -> (PolyRecord, String) {
    (PolyRecord::new(n, disc, r), r.polynomial.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let explicit = cli.prec;
    let prec = explicit.unwrap_or(DEFAULT_PREC);
    if prec < 20 {
        return Err(Failure(format!("precision must be at least 20 digits (got {prec})")));
    }
    match cli.command {
        Command::Pn { n } => {
            let r = ramanujan_polynomial(n, prec)?;
            warn_if_not_squarefree(n);
            emit_polys(cli.format, &[record(Some(n), -n, &r)], false)
        }
        Command::PnRange { from, to } => {
            if from > to {
                return Err(Failure(format!("empty range: from {from} > to {to}")));
            }
            let results = compute_range(from, to, prec)?;
            for (n, _) in &results {
                warn_if_not_squarefree(*n);
            }
            let recs: Vec<_> = results.iter().map(|(n, r)| record(Some(*n), -n, r)).collect();
            emit_polys(cli.format, &recs, true)
        }
        Command::Hilbert { disc } => {
            let r = hilbert_polynomial(disc, explicit)?;
            emit_polys(cli.format, &[record(None, disc, &r)], false)
        }
        Command::CheckInvariance => {
            let mut all = true;
            for class in [11, 35, 59] {
                let report = invariance_report(class)?;
                let failed: Vec<String> = report
                    .iter()
                    .filter(|g| !g.fixed)
                    .map(|g| g.generator.to_string())
                    .collect();
                if failed.is_empty() {
                    println!("PASS class {class} mod 72 ({} generators)", report.len());
                } else {
                    all = false;
                    println!("FAIL class {class} mod 72: not fixed by {}", failed.join(", "));
                }
            }
            if all {
                Ok(())
            } else {
                Err(Failure("invariance check failed".into()))
            }
        }
        Command::Selftest => {
            let checks = selftest::run_all(prec, 20, 500)?;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("{tag} {}: {}", c.name, c.detail);
            }
            match checks.iter().filter(|c| !c.passed).count() {
                0 => Ok(()),
                k => Err(Failure(format!("{k} self checks failed"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let outcome = run(cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(1)
        }
    }
}
