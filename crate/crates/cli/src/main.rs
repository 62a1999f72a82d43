use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use superfock_cli::{
    cmd_check, cmd_entangle, cmd_evolve, cmd_susino, cmd_thermal, cmd_wz, write_files, CliError, Format, OutputFile,
    RunConfig, EXIT_CHECK_FAILED, EXIT_OK,
};

#[derive(Parser, Debug)]
#[command(
    name = "superfock",
    version,
    about = "Finite supersymmetry transformations on truncated Fock spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for output files. Without it files go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    cutoff: Option<usize>,

    #[arg(long, global = true)]
    margin: Option<usize>,

    /// Replaces every upper-bound tolerance of `check`.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed of the randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every invariant suite; exit 1 if any check fails.
    Check,
    /// Transition probabilities of the flows Ia and III.
    Evolve,
    /// Entanglement entropy tables.
    Entangle,
    /// Gibbs-state expectations and drift.
    Thermal,
    /// Susino phases and statistics.
    Susino,
    /// Wess–Zumino spectrum and closed-form comparison.
    Wz,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(c) = cli.cutoff {
        config.cutoff = c;
    }
    if let Some(m) = cli.margin {
        config.margin = m;
    }
    if let Some(t) = cli.tol {
        config.tolerance = Some(t);
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(o) = &cli.out {
        config.output = Some(o.clone());
    }
    config.validate()?;
    Ok(config)
}

fn emit(config: &RunConfig, files: &[OutputFile]) -> Result<(), CliError> {
    match &config.output {
        Some(dir) => write_files(dir, files),
        None => {
            let mut stdout = std::io::stdout().lock();
            for file in files {
                let written = if files.len() > 1 {
                    write!(stdout, "# {}\n{}", file.name, file.contents)
                } else {
                    write!(stdout, "{}", file.contents)
                };
                written.map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
            }
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let config = build_config(cli)?;
    let files = match cli.command {
        Command::Check => {
            let (report, file) = cmd_check(&config)?;
            emit(&config, &[file])?;
            for name in &report.failures {
                eprintln!("FAILED {name}");
            }
            return Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::Evolve => cmd_evolve(&config)?,
        Command::Entangle => cmd_entangle(&config)?,
        Command::Thermal => cmd_thermal(&config)?,
        Command::Susino => cmd_susino(&config)?,
        Command::Wz => cmd_wz(&config)?,
    };
    emit(&config, &files)?;
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
