use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use oschen::analysis::{analyze, AnalysisOptions};
use oschen::exactla::{RankMode, RankStrategy};
use oschen::input::parse_input;
use oschen::registry::{self, Arrangement};
use oschen::{Error, Result};

#[derive(Parser)]
#[command(name = "oschen", version, about = "Chen ranks, resonance and Betti numbers of line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis and print a report.
    Analyze(AnalyzeArgs),
    /// Print the names of the built-in examples.
    ListExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Exact,
    Modular,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// JSON arrangement file.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    input: Option<PathBuf>,
    /// Built-in example, e.g. braid or pencil(5).
    #[arg(long)]
    example: Option<String>,
    #[arg(long, default_value_t = 10)]
    kmax: usize,
    #[arg(long, default_value_t = 6)]
    imax: usize,
    #[arg(long, value_enum, default_value_t = Strategy::Verify)]
    strategy: Strategy,
    /// Fixed prime for the modular strategy.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest sub-arrangement examined by the resonance search.
    #[arg(long)]
    search_cap: Option<usize>,
    #[arg(long, default_value_t = 4)]
    torsion_window: usize,
    /// Internal degree bound for the Aomoto exactness check.
    #[arg(long, default_value_t = 6)]
    epy_degree: usize,
    /// Include wall-clock time and solver counters in the report.
    #[arg(long)]
    timing: bool,
}

fn load(args: &AnalyzeArgs) -> Result<Arrangement> {
    match (&args.input, &args.example) {
        (Some(path), _) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            parse_input(&bytes)?.to_arrangement()
        }
        (None, Some(name)) => registry::example(name),
        (None, None) => Err(Error::Input("one of --input or --example is required".into())),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("OSCHEN_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Input(format!("OSCHEN_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))
}

fn run_analyze(args: &AnalyzeArgs) -> Result<String> {
    let mode = match args.strategy {
        Strategy::Exact => RankMode::Exact,
        Strategy::Modular => RankMode::Modular(args.prime),
        Strategy::Verify => RankMode::Verify,
    };
    if args.prime.is_some() && !matches!(args.strategy, Strategy::Modular) {
        return Err(Error::Input("--prime requires --strategy modular".into()));
    }
    let options = AnalysisOptions {
        kmax: args.kmax,
        imax: args.imax,
        strategy: RankStrategy { mode, seed: args.seed },
        search_cap: args.search_cap,
        torsion_window: args.torsion_window,
        epy_degree: args.epy_degree,
        timing: args.timing,
    };
    let arrangement = load(args)?;
    let report = analyze(&arrangement, &options)?;
    Ok(match args.format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::ListExamples => Ok(registry::list_examples().join("\n") + "\n"),
    });
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
