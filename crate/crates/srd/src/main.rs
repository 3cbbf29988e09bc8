use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use log::error;

use srd::output::OutputDir;
use srd::{Command, RunConfig};

/// Short-range dependence certification for moving-average random fields.
#[derive(Debug, Parser)]
#[command(name = "srd", version)]
struct Cli {
    /// Workflow to run; defaults to the config's `command` key.
    #[arg(value_enum)]
    command: Option<Command>,

    /// Run configuration file.
    #[arg(short, long)]
    config: PathBuf,

    /// Overrides every seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory; beats SRD_OUTPUT_DIR and the config's `output` key.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// More logging; repeat for debug output.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

const DEFAULT_OUTPUT: &str = "srd-out";

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let mut config = match RunConfig::load(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", cli.config.display());
            return ExitCode::from(1);
        }
    };
    if let Some(seed) = cli.seed {
        config.set_seed(seed);
    }
    let Some(command) = cli.command.or(config.command) else {
        eprintln!("no workflow given on the command line or as `command` in {}", cli.config.display());
        return ExitCode::from(1);
    };
    if let Some(n) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            error!("thread pool: {e}");
        }
    }
    let dir = cli
        .output
        .or_else(|| std::env::var_os("SRD_OUTPUT_DIR").map(PathBuf::from))
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT));
    let out = match OutputDir::create(&dir) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return ExitCode::from(1);
        }
    };
    match srd::run(command, &config, &out) {
        Ok(status) => {
            println!("{command}: {status:?} ({})", dir.display());
            ExitCode::from(status.exit_code())
        }
        Err(e) => {
            eprintln!("{command} failed: {e:#}");
            ExitCode::from(1)
        }
    }
}
