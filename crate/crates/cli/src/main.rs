use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conekit::kernel::limits::set_max_faces;
use conekit::mpec::DEFAULT_SAMPLES;
use conekit_cli::commands::{self, Check, What};
use conekit_cli::format::parse_point;
use conekit_cli::{selftest, CliError, Report};

#[derive(Parser)]
#[command(
    name = "conekit",
    version,
    about = "Exact tangent/normal cones and stationarity certificates"
)]
struct Cli {
    /// Bound on enumerated faces and cells (overrides CONEKIT_MAX_FACES).
    #[arg(long, global = true)]
    max_faces: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent, normal, lineality or critical cone of a polyhedral union.
    AnalyzeSet {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        what: What,
        /// Comma-separated rationals, e.g. `0,1/2`; overrides the file.
        #[arg(long)]
        point: Option<String>,
        /// Regular normal for `--what critical`; overrides the file.
        #[arg(long)]
        z_star: Option<String>,
    },
    /// Stationarity check on a linearized problem; writes a certificate.
    Stationarity {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Re-check a certificate file against its problem file.
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        cert: PathBuf,
    },
    /// MPEC analysis, certificate search and verification.
    Mpec {
        #[command(subcommand)]
        action: MpecAction,
    },
    /// Run the built-in example and property checks.
    Selftest {
        #[arg(long)]
        output: Option<PathBuf>,
        /// Corrupt the example data; the self-test must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum MpecAction {
    Analyze {
        #[command(flatten)]
        io: Io,
        /// Sampled directions per face of dimension ≥ 2.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    Search {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        cert: PathBuf,
    },
}

fn face_limit(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("CONEKIT_MAX_FACES") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Schema(format!("CONEKIT_MAX_FACES must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    if let Some(limit) = face_limit(cli.max_faces)? {
        set_max_faces(limit);
    }
    let parse_opt = |s: Option<String>| s.as_deref().map(parse_point).transpose();
    Ok(match cli.command {
        Command::AnalyzeSet {
            io,
            what,
            point,
            z_star,
        } => {
            let p = commands::read_problem(&io.input)?;
            (
                commands::analyze_set(&p, what, parse_opt(point)?, parse_opt(z_star)?)?,
                io.output,
            )
        }
        Command::Stationarity { io, check } => {
            let p = commands::read_problem(&io.input)?;
            (commands::stationarity(&p, check)?, io.output)
        }
        Command::Verify { io, cert } => {
            let p = commands::read_problem(&io.input)?;
            (commands::verify(&p, &commands::read_certificate(&cert)?)?, io.output)
        }
        Command::Mpec { action } => match action {
            MpecAction::Analyze { io, samples } => {
                let p = commands::read_problem(&io.input)?;
                (commands::mpec_analyze(&p, samples)?, io.output)
            }
            MpecAction::Search { io, samples } => {
                let p = commands::read_problem(&io.input)?;
                (commands::mpec_search(&p, samples)?, io.output)
            }
            MpecAction::Verify { io, cert } => {
                let p = commands::read_problem(&io.input)?;
                (
                    commands::mpec_verify(&p, &commands::read_certificate(&cert)?)?,
                    io.output,
                )
            }
        },
        Command::Selftest { output, inject_fault } => (selftest::selftest(inject_fault)?, output),
    })
}

fn emit(report: &Report, output: Option<PathBuf>) -> Result<(), CliError> {
    let text = report.render();
    match output {
        Some(path) if !text.is_empty() => std::fs::write(&path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        _ => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    if let Some(err) = &report.error {
        let _ = writeln!(std::io::stderr(), "{err}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(cli) {
        Ok((report, output)) => match emit(&report, output) {
            Ok(()) => report,
            Err(e) => Report::from_error(&e),
        },
        Err(e) => Report::from_error(&e),
    };
    if report.body.is_null() {
        if let Some(err) = &report.error {
            let _ = writeln!(std::io::stderr(), "{err}");
        }
    }
    ExitCode::from(report.exit_code as u8)
}
