use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stonemeasure::Exec;
use stonemeasure_harness::config::ModelConfig;
use stonemeasure_harness::models::{sweep, Model};
use stonemeasure_harness::runner::{run, RunOptions};
use stonemeasure_harness::suites::{find, SuiteDef, SUITES};

#[derive(Parser)]
#[command(
    name = "stonemeasure",
    version,
    about = "Exact verification suites for generated Boolean algebras and their measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against a model config.
    Run {
        /// JSON model config.
        config: PathBuf,
        /// Suite name, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Omit the timestamp and wall times so reports are byte-reproducible.
        #[arg(long)]
        no_timestamp: bool,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List suite names and anchors.
    List,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_CONFIG)
}

fn select(names: &[String]) -> Result<Vec<&'static SuiteDef>, String> {
    if names.iter().any(|n| n == "all") {
        return Ok(SUITES.iter().collect());
    }
    names.iter().map(|n| find(n).ok_or_else(|| format!("unknown suite {n:?} (see `stonemeasure list`)"))).collect()
}

fn exec_for(jobs: Option<usize>) -> Result<Exec, String> {
    match jobs {
        Some(0) => Err("--jobs must be at least 1".into()),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for s in SUITES {
                println!("{:<20} {}", s.name, s.anchor);
            }
            ExitCode::SUCCESS
        }
        Command::Run { config, suite, seed, report, no_timestamp, jobs } => {
            let shown = config.display().to_string();
            let cfg = match ModelConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let gs = match cfg.build(&shown) {
                Ok(gs) => gs,
                Err(e) => return usage_error(e),
            };
            let names = match (suite, &cfg.suites) {
                (Some(name), _) => vec![name],
                (None, Some(list)) => list.clone(),
                (None, None) => vec!["all".to_string()],
            };
            let suites = match select(&names) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let exec = match exec_for(jobs) {
                Ok(e) => e,
                Err(e) => return usage_error(e),
            };
            let label = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "config".into());
            let mut models = vec![Model::new(label, gs)];
            if cfg.sweep {
                models.extend(sweep());
            }
            let opts = RunOptions {
                seed: seed.or(cfg.seed).unwrap_or(0),
                caps: cfg.caps,
                draws: cfg.draws,
                timestamp: !no_timestamp,
                exec,
            };
            let result = run(&suites, &models, &opts);
            for s in &result.suites {
                let status = if s.passed { "PASS" } else { "FAIL" };
                eprintln!("{status} {:<20} cases={:<8} failures={}", s.name, s.cases, s.failure_count);
                for a in &s.approx {
                    eprintln!("     {:<20} {} = {} (approximate)", "", a.label, a.value);
                }
            }
            let text = result.to_json();
            match report {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_FAIL);
                    }
                }
                None => print!("{text}"),
            }
            if result.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}
