mod diagram;
mod distribution;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bifree_core::bicum::RightOrder;
use bifree_core::bnc::{count_bnc, enumerate_bnc, BncShape};
use bifree_core::ncpart::{enumerate_nc, enumerate_nc_prime, kreweras, NCPartition};
use bifree_core::series::Series2;
use bifree_core::transforms::{partial_s, partial_t, Method};
use bifree_core::Limits;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::verify::Suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] bifree_core::Error),
}

#[derive(Parser)]
#[command(
    name = "bifree",
    version,
    about = "Exact bi-free transforms and partition combinatorics"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Non-crossing and bi-non-crossing partitions.
    #[command(subcommand)]
    Nc(NcCommand),
    /// Print a transform of the cumulant table in a JSON file.
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        file: PathBuf,
        /// Highest total degree to print; defaults to everything known.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check an identity on seeded random tables.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random tables.
        #[arg(long, default_value_t = 20)]
        tables: usize,
        /// Spread the tables over worker threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = RightOrderArg::B1b2)]
        right_order: RightOrderArg,
    },
}

#[derive(Subcommand)]
enum NcCommand {
    /// List NC(n).
    Enumerate { n: usize },
    /// List the partitions of NC(n) in which 1 is a singleton.
    EnumeratePrime { n: usize },
    /// Kreweras complement of a partition such as "{1,6|2,3,4|5|7}".
    Kreweras { partition: String },
    /// List BNC for a word of L and R, with diagrams.
    Bnc {
        shape: String,
        /// Only print the count.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformKind {
    /// Partial S-transform; needs both means equal to 1.
    S,
    /// Partial T-transform; needs the right mean equal to 1.
    T,
    /// Partial R-transform, the generating series of the cumulants with
    /// `n + m >= 1`.
    R,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    TMult,
    SMult,
    Lemmas,
    Identities,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RightOrderArg {
    B1b2,
    B2b1,
}

fn limits() -> Result<Limits, CliError> {
    match std::env::var("BIFREE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|cap| Limits::default().raised_to(cap))
            .map_err(|_| CliError::Input(format!("BIFREE_CAP must be a number, got {v:?}"))),
        Err(_) => Ok(Limits::default()),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn nc(cmd: NcCommand, format: Format, limits: &Limits) -> Result<String, CliError> {
    let lines: Vec<String> = match cmd {
        NcCommand::Enumerate { n } => enumerate_nc(n, limits)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        NcCommand::EnumeratePrime { n } => enumerate_nc_prime(n, limits)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        NcCommand::Kreweras { partition } => {
            let pi: NCPartition = partition.parse()?;
            vec![kreweras(&pi).to_string()]
        }
        NcCommand::Bnc { shape, count } => {
            let shape: BncShape = shape.parse()?;
            if count {
                return Ok(match format {
                    Format::Json => json(&count_bnc(&shape, limits)?),
                    Format::Text => format!("{}\n", count_bnc(&shape, limits)?),
                });
            }
            let all = enumerate_bnc(&shape, limits)?;
            if format == Format::Json {
                all.iter().map(ToString::to_string).collect()
            } else {
                let mut out = String::new();
                for p in &all {
                    let _ = writeln!(out, "{p}");
                    out.push_str(&diagram::render(p));
                    out.push('\n');
                }
                return Ok(out);
            }
        }
    };
    Ok(match format {
        Format::Json => json(&lines),
        Format::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
    })
}

#[derive(Serialize)]
struct TransformOutput {
    transform: &'static str,
    order: usize,
    coefficients: Vec<distribution::Coefficient>,
}

fn transform(
    kind: TransformKind,
    file: &Path,
    order: Option<usize>,
    format: Format,
    limits: &Limits,
) -> Result<String, CliError> {
    let d = distribution::read(file)?;
    let (name, series): (&'static str, Series2) = match kind {
        TransformKind::T => ("t", partial_t(&d, Method::Cumulant, limits)?),
        TransformKind::S => ("s", partial_s(&d, Method::Cumulant, limits)?),
        TransformKind::R => ("r", &d.series_c() - &Series2::one(d.trunc())),
    };
    let series = match order {
        Some(k) if k > series.order() => {
            return Err(CliError::Input(format!(
                "the table determines this transform only to order {}, asked for {k}",
                series.order()
            )))
        }
        Some(k) => series.truncate(k),
        None => series,
    };
    Ok(match format {
        Format::Text => format!("{series}\n"),
        Format::Json => json(&TransformOutput {
            transform: name,
            order: series.order(),
            coefficients: distribution::coefficients(&series),
        }),
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    status: &'static str,
    reports: &'a [verify::Report],
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let limits = limits()?;
    match cli.command {
        Command::Nc(cmd) => Ok((nc(cmd, cli.format, &limits)?, true)),
        Command::Transform { kind, file, order } => {
            Ok((transform(kind, &file, order, cli.format, &limits)?, true))
        }
        Command::Verify {
            suite,
            order,
            seed,
            tables,
            parallel,
            right_order,
        } => {
            let suite = match suite {
                SuiteArg::TMult => Suite::TMult,
                SuiteArg::SMult => Suite::SMult(match right_order {
                    RightOrderArg::B1b2 => RightOrder::B1B2,
                    RightOrderArg::B2b1 => RightOrder::B2B1,
                }),
                SuiteArg::Lemmas => Suite::Lemmas,
                SuiteArg::Identities => Suite::Identities,
            };
            let order = order.unwrap_or(suite.default_order());
            let reports = verify::run(suite, order, seed, tables, parallel, &limits)?;
            let passed = reports.iter().all(verify::Report::passed);
            let status = if passed { "ok" } else { "mismatch" };
            let out = match cli.format {
                Format::Json => json(&VerifyOutput {
                    status,
                    reports: &reports,
                }),
                Format::Text => {
                    let mut out: String =
                        reports.iter().map(|r| format!("{}\n", r.text())).collect();
                    let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
                    out
                }
            };
            Ok((out, passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(bifree_core::Error::NotNormalized(_)) = e {
                eprintln!("hint: both transforms are unchanged by rescaling a face, so the rescaled table gives the same result");
            }
            ExitCode::from(2)
        }
    }
}
