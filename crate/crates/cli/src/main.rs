//! `ncwb`: batch runner for the nc-workbench verification suites.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report
//! is still written), 2 for configuration or usage errors (nothing is
//! written), 3 when a computation fails.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use nc_workbench::suite::Suite;

use crate::config::RunConfig;
use crate::report::{Report, SuiteRecord};

#[derive(Debug, Parser)]
#[command(name = "ncwb", version, about = "Run nc-workbench verification suites and write JSON/CSV reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; the shipped default is used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Overrides the configured seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Overrides the configured output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Restricts the run to the named suite; may be repeated.
    #[arg(long = "suite", global = true, value_name = "NAME")]
    suites: Vec<String>,

    /// Multiplies every upper-bound tolerance.
    #[arg(long, global = true, value_name = "X", default_value_t = 1.0)]
    tol_scale: f64,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Young calculus, subtheory compatibility and the H-bound sweep.
    Norms,
    /// Tracial entropy and the ζ-functional on embedded elements.
    Entropy,
    /// Isometry, θ-scaling, membership residuals, regularity and moments.
    CrossedVerify,
    /// Weyl relations, locality scan, tangential isometry, cone exhaustion.
    WeylVerify,
    /// Contour residual tables and mollifier identities.
    FlowsVerify,
    /// d² = 0 and graded Leibniz.
    FormsVerify,
    /// Every suite.
    All,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::All => "all",
            Command::Norms => Suite::Norms.name(),
            Command::Entropy => Suite::Entropy.name(),
            Command::CrossedVerify => Suite::CrossedVerify.name(),
            Command::WeylVerify => Suite::WeylVerify.name(),
            Command::FlowsVerify => Suite::FlowsVerify.name(),
            Command::FormsVerify => Suite::FormsVerify.name(),
        }
    }

    fn suites(self) -> Vec<Suite> {
        match self {
            Command::All => Suite::ALL.to_vec(),
            other => vec![Suite::from_name(other.name()).expect("subcommands name suites")],
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("ncwb: {msg}");
    ExitCode::from(2)
}

fn select(command: Command, names: &[String]) -> Result<Vec<Suite>, String> {
    let available = command.suites();
    if names.is_empty() {
        return Ok(available);
    }
    let mut out = Vec::new();
    for name in names {
        let suite = Suite::from_name(name).ok_or_else(|| format!("unknown suite {name:?}"))?;
        if !available.contains(&suite) {
            return Err(format!("suite {name:?} is not part of `{}`", command.name()));
        }
        if !out.contains(&suite) {
            out.push(suite);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();

    let mut cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        },
        None => RunConfig::shipped(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if !(cli.tol_scale > 0.0 && cli.tol_scale.is_finite()) {
        return usage_error(format!("--tol-scale must be positive, got {}", cli.tol_scale));
    }
    let suites = match select(cli.command, &cli.suites) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };

    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let params = &cfg.params;
                let seed = cfg.seed;
                scope.spawn(move || {
                    let t = Instant::now();
                    (suite, suite.run(params, seed), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });

    let mut records = Vec::new();
    for (suite, result, elapsed) in results {
        match result {
            Ok(mut output) => {
                for check in &mut output.checks {
                    check.scale_tolerance(cli.tol_scale);
                }
                records.push(SuiteRecord::new(suite, output, elapsed));
            }
            Err(e) => {
                eprintln!("ncwb: suite {} failed: {e}", suite.name());
                return ExitCode::from(3);
            }
        }
    }

    let report = Report::new(&cfg, cli.command.name(), cli.tol_scale, records, start.elapsed());
    if let Err(e) = report.write(&cfg.output.dir) {
        eprintln!("ncwb: cannot write report to {}: {e}", cfg.output.dir.display());
        return ExitCode::from(3);
    }
    for suite in &report.suites {
        for check in &suite.checks {
            println!("{} {:<40} {}", if check.pass { "pass" } else { "FAIL" }, check.id, check.summary());
        }
    }
    println!("report: {}", cfg.output.dir.join(report::REPORT_FILE).display());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("ncwb: failing checks: {}", report.failed.join(", "));
        ExitCode::from(1)
    }
}
