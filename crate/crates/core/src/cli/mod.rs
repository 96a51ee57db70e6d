//! The `probe-witness` command line: `pattern`, `witness`, `scan` and
//! `verify`.
//!
//! Exit codes: 0 success, 2 config error, 3 physics-contract violation,
//! 4 verification failure (1 for I/O trouble).

pub mod config;
pub mod report;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{RealizationConfig, ScenarioConfig, SweepConfig, SweepParameter, TargetConfig};
pub use report::{run, scan, FringeSample, RunReport, ScanRow, WitnessSummary, DEFAULT_GRID};
pub use verify::{run_checks, CheckResult};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Physics(#[from] crate::Error),
    #[error("verification failed: {failed} of {total} checks")]
    Verify { failed: usize, total: usize, lines: String },
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Physics(crate::Error::Usage(_)) => 2,
            CliError::Physics(_) => 3,
            CliError::Verify { .. } => 4,
            CliError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "probe-witness", version, about = "Entanglement witnesses from single-probe interference fringes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fringe table (CSV) and run report (JSON).
    Pattern(RunArgs),
    /// Witness report (JSON).
    Witness(RunArgs),
    /// One CSV row per sweep point.
    Scan(RunArgs),
    /// Run the identity and claim checks; JSON lines.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of phases on [-π, π].
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write pattern.svg (needs --out).
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced: files written, or text for stdout.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub files: Vec<PathBuf>,
}

fn write(dir: &Path, name: &str, text: &str, out: &mut Output) -> Result<(), CliError> {
    let io = |path: PathBuf| move |source| CliError::Io { path, source };
    std::fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(io(path.clone()))?;
    out.files.push(path);
    Ok(())
}

fn load(args: &RunArgs) -> Result<(ScenarioConfig, u64), CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let cfg = ScenarioConfig::from_toml_str(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", args.config.display())),
        other => other,
    })?;
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    Ok((cfg, seed))
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    let mut out = Output::default();
    match command {
        Command::Pattern(args) => {
            if args.grid < 3 {
                return Err(CliError::Config(format!("--grid {} is too small; use at least 3 phases", args.grid)));
            }
            let (cfg, seed) = load(args)?;
            let r = run(&cfg, seed, args.grid)?;
            let csv = report::fringe_csv(&r.fringe_table);
            match &args.out {
                Some(dir) => {
                    write(dir, "pattern.csv", &csv, &mut out)?;
                    write(dir, "report.json", &report::report_json(&r), &mut out)?;
                    if args.svg {
                        write(dir, "pattern.svg", &report::fringe_svg(&r.fringe_table), &mut out)?;
                    }
                }
                None => out.stdout = csv,
            }
        }
        Command::Witness(args) => {
            let (cfg, seed) = load(args)?;
            let json = report::report_json(&run(&cfg, seed, 0)?);
            match &args.out {
                Some(dir) => write(dir, "witness.json", &json, &mut out)?,
                None => out.stdout = json,
            }
        }
        Command::Scan(args) => {
            let (cfg, seed) = load(args)?;
            let csv = report::scan_csv(&scan(&cfg, seed)?);
            match &args.out {
                Some(dir) => write(dir, "scan.csv", &csv, &mut out)?,
                None => out.stdout = csv,
            }
        }
        Command::Verify(args) => {
            let checks = run_checks()?;
            let lines: String = checks.iter().map(|c| c.json_line() + "\n").collect();
            if let Some(dir) = &args.out {
                write(dir, "verify.jsonl", &lines, &mut out)?;
            }
            out.stdout = lines;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Verify { failed, total: checks.len(), lines: out.stdout });
            }
        }
    }
    Ok(out)
}

/// Parses `std::env::args`, runs, prints, and returns the exit code.
pub fn main_with_env() -> i32 {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            0
        }
        Err(e) => {
            if let CliError::Verify { lines, .. } = &e {
                print!("{lines}");
            }
            eprintln!("probe-witness: {e}");
            e.exit_code()
        }
    }
}
