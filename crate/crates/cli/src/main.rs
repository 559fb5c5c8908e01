//! `hyperhom`: classify symmetric weight functions, evaluate partition
//! functions, and build reduction gadgets. Every run prints one JSON report
//! on stdout and a one-line summary on stderr.

mod commands;
mod report;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperhom::evaluator::{brute_cap_from_env, Strategy};

use commands::GadgetRequest;
use report::{Failure, Outcome, Report, TOOL};

#[derive(Parser)]
#[command(name = "hyperhom", version, about = "Exact hypergraph partition functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide tractability of a weight function and print its structure or a witness.
    Classify {
        #[arg(short = 'g', long = "function")]
        g: PathBuf,
    },
    /// Evaluate Z^g on an instance.
    Eval {
        #[arg(short = 'g', long = "function")]
        g: PathBuf,
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Brute-force guard; defaults to $HYPERHOM_BRUTE_CAP or 10^7.
        #[arg(long)]
        brute_cap: Option<u64>,
    },
    /// Build a reduction gadget.
    Gadget {
        #[command(subcommand)]
        kind: GadgetCommand,
        /// Write the instance here and the bookkeeping to `<out>.json`.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check built-in fixtures against the brute-force oracle.
    Selftest,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Pad every k-edge with r - k fresh vertices.
    Pad {
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
        /// Edge size of the input; defaults to its arity.
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(short = 'r')]
        r: usize,
    },
    /// Subdivide every edge of a 2-uniform multigraph.
    Stretch {
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
    },
    /// Binary table of the k-th marginal's Gram function.
    Tilde {
        #[arg(short = 'g', long = "function")]
        g: PathBuf,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Attach (j - 1) pendant edges per vertex-edge incidence.
    Power {
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
        #[arg(short = 'j')]
        j: usize,
    },
    /// p linked copies of a connected hypergraph.
    Separate {
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
        #[arg(short = 'p')]
        p: usize,
    },
    /// Replace every equality by p pairs of linking edges.
    EqElim {
        #[arg(short = 'i', long = "instance")]
        i: PathBuf,
        #[arg(short = 'p')]
        p: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Structured,
    DpLambda,
    Brute,
}

impl From<MethodArg> for Strategy {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Strategy::Auto,
            MethodArg::Structured => Strategy::Structured,
            MethodArg::DpLambda => Strategy::DpLambda,
            MethodArg::Brute => Strategy::Brute,
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Classify { g } => commands::run_classify(&g),
        Command::Eval { g, i, method, brute_cap } => {
            commands::run_eval(&g, &i, method.into(), brute_cap.unwrap_or_else(brute_cap_from_env))
        }
        Command::Gadget { kind, out } => {
            let request = match kind {
                GadgetCommand::Pad { i, k, r } => GadgetRequest::Pad { input: i, k, r },
                GadgetCommand::Stretch { i } => GadgetRequest::Stretch { input: i },
                GadgetCommand::Tilde { g, k } => GadgetRequest::Tilde { g, k },
                GadgetCommand::Power { i, j } => GadgetRequest::Power { input: i, j },
                GadgetCommand::Separate { i, p } => GadgetRequest::Separate { input: i, p },
                GadgetCommand::EqElim { i, p } => GadgetRequest::EqElim { input: i, p },
            };
            commands::run_gadget(request, out.as_deref())
        }
        Command::Selftest => selftest::run_selftest(),
    }
}

// A closed stdout is not an error worth a panic.
fn emit(report: &Report) {
    match serde_json::to_string_pretty(report) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout().lock(), "{s}");
        }
        Err(e) => eprintln!("error: cannot serialize report: {e}"),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let start = Instant::now();
    let elapsed = |start: Instant| (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;

    let outcome = match Cli::try_parse_from(&argv) {
        Ok(cli) => dispatch(cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                let _ = write!(std::io::stdout().lock(), "{e}");
                return ExitCode::SUCCESS;
            }
            _ => Err(Failure::Input(e.render().to_string().trim().to_string())),
        },
    };
    let (status, payload, code) = match outcome {
        Ok(o) => {
            eprintln!("{}", o.summary);
            (o.status, o.payload, 0)
        }
        Err(f) => {
            eprintln!("error: {}", f.payload()["message"].as_str().unwrap_or(""));
            ("error", f.payload(), f.exit_code())
        }
    };
    emit(&Report {
        tool: TOOL,
        version: env!("CARGO_PKG_VERSION"),
        command,
        status,
        payload,
        timing_ms: elapsed(start),
    });
    ExitCode::from(code)
}
