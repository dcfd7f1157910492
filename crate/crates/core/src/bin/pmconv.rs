use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pmconv::corpus::generate_corpus;
use pmconv::error::{Error, Result};
use pmconv::num::parse_rational;
use pmconv::report::{run_scenarios, Options, Report};
use pmconv::scenario::Scenario;

const REFERENCE_SCENARIO: &str = include_str!("../../scenarios/reference.scn");

#[derive(Parser)]
#[command(name = "pmconv", version, about = "Strong ideal convergence checks over finite PM spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance for Lévy distance brackets.
    #[arg(long, global = true, default_value = "1e-9")]
    dl_tol: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Universe size for the finite additive-property checks.
    #[arg(long, global = true, default_value_t = pmconv::ap::DEFAULT_UNIVERSE)]
    universe_size: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a scenario file (`reference` for the built-in one).
    Run { file: String },
    /// Generate a seeded corpus and run its checks.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Also write the generated scenario files to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one check id across a seeded corpus.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn execute(cli: &Cli) -> Result<Report> {
    let tolerance = parse_rational(&cli.dl_tol)?;
    if tolerance <= pmconv::num::zero() {
        return Err(Error::Domain("--dl-tol must be positive".into()));
    }
    if cli.universe_size == 0 || cli.universe_size > pmconv::ap::MAX_UNIVERSE {
        return Err(Error::Cap(format!("--universe-size must be in 1..={}", pmconv::ap::MAX_UNIVERSE)));
    }
    let mut opts = Options { tolerance, universe: cli.universe_size, only: None };
    match &cli.command {
        Command::Run { file } => {
            let scenario = if file == "reference" {
                Scenario::from_json("reference", REFERENCE_SCENARIO)?
            } else {
                let text = fs::read_to_string(file).map_err(|e| Error::Scenario(format!("{file}: {e}")))?;
                Scenario::from_json(file, &text)?
            };
            Ok(run_scenarios(&[scenario], &opts, None))
        }
        Command::Corpus { seed, count, out } => {
            let corpus = generate_corpus(*seed, (*count).max(1))?;
            if let Some(dir) = out {
                fs::create_dir_all(dir).map_err(|e| Error::Scenario(format!("{}: {e}", dir.display())))?;
                for s in &corpus {
                    let path = dir.join(format!("{}.scn", s.name));
                    fs::write(&path, s.file.to_json()).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
                }
            }
            Ok(run_scenarios(&corpus, &opts, Some(*seed)))
        }
        Command::Check { id, seed, count } => {
            pmconv::checks::find(id)?;
            opts.only = Some(id.clone());
            let corpus = generate_corpus(*seed, (*count).max(1))?;
            Ok(run_scenarios(&corpus, &opts, Some(*seed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            match cli.report {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
