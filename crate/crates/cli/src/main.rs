use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torus_nls::io::{load_field, save_field};
use torus_nls_cli::{
    any_failed, field_norm, free_flow_field, random_field, resolve_seed, shell_field, solve, summarize, verify,
    write_or_print, CliError, NormKind, SolveArgs, VerifyArgs,
};
use torus_nls_harness::presets::DEFAULT_SEED;

#[derive(Parser)]
#[command(name = "torus-nls", version, about = "Critical NLS on rectangular 3-tori: solver, norms and estimate checks")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Picard solve with a split-step cross-check.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Initial datum; default is random data of H^{s_c} norm `amplitude`.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Halve T until the Picard iteration converges.
        #[arg(long = "find-T")]
        find_t: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "allow-large-T")]
        allow_large_t: bool,
    },
    /// Run a preset, a preset family, or `all`.
    Verify {
        preset: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        slack: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Skip the desk-scale guard.
        #[arg(long = "unsafe")]
        allow_unsafe: bool,
        #[arg(long = "allow-large-T")]
        allow_large_t: bool,
        /// Report directory (overrides `output` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a norm of a stored field.
    Norms {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, value_enum)]
        norm: NormArg,
        /// Sobolev index; the Lebesgue exponent for `lp`.
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// Horizon of the free flow for `y` and `v2`.
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Write a `.field.json`.
    Field {
        #[command(subcommand)]
        kind: FieldKind,
    },
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Subcommand)]
enum FieldKind {
    /// Gaussian coefficients with weights ⟨ξ⟩^{-decay}.
    Random {
        #[arg(long)]
        bandlimit: usize,
        #[arg(long, default_value_t = 0.0)]
        decay: f64,
        /// L² norm of the output.
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Gaussian coefficients on the sharp shell N/2 < |ξ| ≤ N.
    Shell {
        #[arg(long)]
        bandlimit: usize,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Propagate a stored field by the free evolution.
    FreeFlow {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ReportAction {
    /// Merge every report CSV in a directory.
    Summarize {
        dir: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Hs,
    Lp,
    Y,
    V2,
}

fn seed_or_default(flag: Option<u64>) -> Result<u64, CliError> {
    Ok(resolve_seed(flag, None)?.unwrap_or(DEFAULT_SEED))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Solve { config, field, find_t, seed, allow_large_t } => {
            let summary = solve(&SolveArgs { config, field, find_t, seed, allow_large_t })?;
            println!(
                "T = {}  iterations = {}  residual = {:.3e}  split-step agreement = {:.3e}",
                summary["T"], summary["diagnostics"]["distances"].as_array().map_or(0, Vec::len),
                summary["diagnostics"]["residual"].as_f64().unwrap_or(f64::NAN),
                summary["splitstep_agreement"].as_f64().unwrap_or(f64::NAN),
            );
        }
        Command::Verify { preset, config, trials, slack, seed, allow_unsafe, allow_large_t, out } => {
            let args = VerifyArgs { preset, config, trials, slack, seed, allow_unsafe, allow_large_t, output: out };
            let reports = verify(&args, &mut std::io::stdout())?;
            if any_failed(&reports) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Norms { field, norm, s, t, n } => {
            let kind = match norm {
                NormArg::Hs => NormKind::Hs,
                NormArg::Lp => NormKind::Lp,
                NormArg::Y => NormKind::Y,
                NormArg::V2 => NormKind::V2,
            };
            println!("{}", field_norm(&load_field(&field)?, kind, s, t, n)?);
        }
        Command::Field { kind } => {
            let (field, out) = match kind {
                FieldKind::Random { bandlimit, decay, amplitude, seed, out } => {
                    (random_field(bandlimit, decay, amplitude, seed_or_default(seed)?), out)
                }
                FieldKind::Shell { bandlimit, n, amplitude, seed, out } => {
                    (shell_field(bandlimit, n, amplitude, seed_or_default(seed)?)?, out)
                }
                FieldKind::FreeFlow { field, t, out } => (free_flow_field(&field, t)?, out),
            };
            save_field(&out, &field)?;
        }
        Command::Report { action: ReportAction::Summarize { dir, out } } => {
            let (csv, rows) = summarize(&dir)?;
            write_or_print(out.as_deref(), &csv)?;
            eprintln!("{rows} rows");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
