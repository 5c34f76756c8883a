use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use rigidcy_cli::commands::{self, ORBIFOLD_CASES, VERIFY_CASES};
use rigidcy_cli::{emit, Format};

#[derive(Parser)]
#[command(name = "rigidcy", version, about = "Exact computations for rigid Calabi-Yau orbifolds and the curves they contain")]
struct Cli {
    /// Emit the JSON report envelope.
    #[arg(long, global = true)]
    json: bool,
    /// Add display-only decimal approximations.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of the orbifold and its crepant resolution.
    Orbifold {
        #[command(subcommand)]
        action: OrbifoldAction,
    },
    /// Counts of degree-3 curves through the singular points.
    Census {
        #[command(subcommand)]
        action: CensusAction,
    },
    /// Classification of cyclic actions with isolated fixed points.
    Appendix {
        #[command(subcommand)]
        action: AppendixAction,
    },
    /// Re-verification of shipped embedding certificates.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Search for embedded curves of a given degree.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=7))]
        d: u32,
    },
    /// Holomorphic differentials on y^7 = x^k (x-1).
    Differentials {
        #[arg(long, value_parser = ["1", "2", "3", "5"])]
        k: Option<String>,
    },
}

#[derive(Subcommand)]
enum OrbifoldAction {
    Report {
        #[arg(long, value_parser = ORBIFOLD_CASES)]
        case: Option<String>,
    },
}

#[derive(Subcommand)]
enum CensusAction {
    Triple,
    Klein {
        /// Three residues mod 7 including 0, e.g. 0,1,3. Omit to scan all subsets.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<u8>>,
    },
}

#[derive(Subcommand)]
enum AppendixAction {
    Classify,
}

#[derive(Subcommand)]
enum VerifyAction {
    Embedding {
        #[arg(long, value_parser = VERIFY_CASES)]
        case: String,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RIGIDCY_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("RIGIDCY_THREADS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("RIGIDCY_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{}", e.render());
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let report = match cli.command {
        Command::Orbifold { action: OrbifoldAction::Report { case } } => commands::orbifold(case.as_deref()),
        Command::Census { action: CensusAction::Triple } => commands::census_triple(),
        Command::Census { action: CensusAction::Klein { subset } } => match commands::census_klein(subset.as_deref()) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}\n\nUsage: rigidcy census klein [--subset 0,a,b]");
                return ExitCode::from(2);
            }
        },
        Command::Appendix { action: AppendixAction::Classify } => commands::appendix_classify(),
        Command::Verify { action: VerifyAction::Embedding { case } } => commands::verify_embedding(&case),
        Command::Search { d } => commands::search(d as usize),
        Command::Differentials { k } => commands::differentials(k.map(|k| k.parse().expect("validated by clap"))),
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    let _ = std::io::stdout().write_all(emit(&report, format, cli.approx).as_bytes());
    ExitCode::from(report.envelope.exit_code() as u8)
}
