//! `reslab`: runs containment-experiment session files and writes reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use reslab_cli::report::Format;
use reslab_cli::session::{parse_field, OrderSpec};
use reslab_cli::{emit_report, parse_session, run, Config};
use reslab_core::algebra::FieldSpec;
use reslab_core::limits::{DEFAULT_DEGREE_GUARD, DEFAULT_MACAULAY_THRESHOLD, DEFAULT_SATURATION_CAP};

const USAGE_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "reslab", version, about = "Symbolic versus ordinary power containment experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a session file and write its report.
    Run(RunArgs),
    /// Parse a session file and print its canonical form.
    Parse {
        session: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Session file (`-` reads standard input).
    session: PathBuf,
    /// Coefficient field replacing the session's: GF(p) or QQ.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Term order replacing the session's.
    #[arg(long, value_parser = parse_order)]
    order: Option<OrderSpec>,
    /// Largest total degree an intermediate Groebner basis element may reach.
    #[arg(long, env = "RESLAB_DEGREE_GUARD", default_value_t = DEFAULT_DEGREE_GUARD)]
    degree_guard: u32,
    /// Iteration cap of saturation loops.
    #[arg(long, default_value_t = DEFAULT_SATURATION_CAP)]
    saturation_cap: usize,
    /// Largest Macaulay matrix (rows times columns) for graded linear algebra.
    #[arg(long, default_value_t = DEFAULT_MACAULAY_THRESHOLD)]
    macaulay_threshold: usize,
    /// Worker threads (default: one per core).
    #[arg(long, env = "RESLAB_JOBS")]
    jobs: Option<usize>,
    /// Time budget per command, in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_order(s: &str) -> Result<OrderSpec, String> {
    OrderSpec::parse(s).ok_or_else(|| format!("expected grevlex or lex, found `{s}`"))
}

fn read_session(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("standard input: {e}"))
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Parse { session } => {
            let parsed = read_session(&session).and_then(|text| {
                parse_session(&text).map_err(|d| format!("{}:{d}", session.display()))
            });
            match parsed {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE_ERROR)
                }
            }
        }
        Command::Run(args) => run_command(args),
    }
}

fn run_command(args: RunArgs) -> ExitCode {
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(USAGE_ERROR)
    };
    let text = match read_session(&args.session) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(d) => return fail(format!("{}:{d}", args.session.display())),
    };
    let timeout = match args.timeout {
        Some(t) if !(t.is_finite() && t > 0.0) => return fail(format!("timeout must be positive, got {t}")),
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    if args.jobs == Some(0) {
        return fail("--jobs must be at least 1".into());
    }
    let config = Config {
        field: args.field,
        order: args.order,
        degree_guard: args.degree_guard,
        saturation_cap: args.saturation_cap,
        macaulay_threshold: args.macaulay_threshold,
        jobs: args.jobs,
        timeout,
    };
    let report = match run(&session, &config) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let doc = match emit_report(&report, args.format) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, doc) {
                return fail(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{doc}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
