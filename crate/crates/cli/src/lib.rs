//! Command implementations behind the `torus-nls` binary.

pub mod config;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use torus_nls::evolution::propagate;
use torus_nls::io::{load_field, save_field};
use torus_nls::lattice::{to_grid, SpectralField, TorusMetric};
use torus_nls::littlewood_paley::{project_dyadic, DyadicIndex};
use torus_nls::nonlinearity::PowerNonlinearity;
use torus_nls::paths::{sobolev_norm, v2_norm_sq, y_norm, SpaceTimePath, TimeGrid};
use torus_nls::solver::{find_t, mass, picard_solve, splitstep_solve, PicardSettings};
use torus_nls_harness::{lookup, preset_registry, run_estimate_with, ExperimentReport, HarnessError, RunOptions, Verdict};

use crate::config::{load_config, ConfigError, RunConfig, SOLVE_KEYS};

pub const SEED_ENV: &str = "TORUS_NLS_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{0}")]
    Numerical(String),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// 2 for anything the caller can fix, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}

impl From<torus_nls::Error> for CliError {
    fn from(e: torus_nls::Error) -> Self {
        use torus_nls::Error as E;
        match e {
            E::NonFinite(_) | E::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            E::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::NotFound(_) | HarnessError::InvalidSpec(_) | HarnessError::EpsilonTooLarge { .. } => {
                CliError::Usage(e.to_string())
            }
            HarnessError::Core(inner) => inner.into(),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// CLI flag, then `TORUS_NLS_SEED`, then the config file.
pub fn resolve_seed(flag: Option<u64>, config: Option<u64>) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not a u64"))),
        Err(_) => Ok(config),
    }
}

fn check_horizon(t: f64, allow_large_t: bool) -> Result<()> {
    if !(t > 0.0 && (t <= 1.0 || allow_large_t)) {
        return Err(CliError::Usage(format!("time horizon T = {t} outside (0, 1]; pass --allow-large-T to override")));
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

// -- solve --------------------------------------------------------------------

pub struct SolveArgs {
    pub config: PathBuf,
    pub field: Option<PathBuf>,
    pub find_t: bool,
    pub seed: Option<u64>,
    pub allow_large_t: bool,
}

/// Random datum with weights `⟨ξ⟩^{−s_c−3/2}`, scaled to `‖u₀‖_{H^{s_c}} = amplitude`.
pub fn critical_datum(metric: TorusMetric, bandlimit: usize, p: f64, amplitude: f64, seed: u64) -> SpectralField {
    let sc = torus_nls::nonlinearity::s_critical(p, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = SpectralField::random(metric, bandlimit, &mut rng, |xi| metric.bracket(xi).powf(-sc - 1.5));
    &raw * (amplitude / sobolev_norm(&raw, sc))
}

pub fn solve(args: &SolveArgs) -> Result<serde_json::Value> {
    let mut cfg = load_config(&args.config, &SOLVE_KEYS)?;
    cfg.seed = resolve_seed(args.seed, cfg.seed)?;
    check_horizon(cfg.t_final, args.allow_large_t)?;
    let metric = cfg.metric()?;
    let nl = PowerNonlinearity::new(cfg.p, cfg.sign)?;
    let seed = cfg.seed.unwrap_or(torus_nls_harness::presets::DEFAULT_SEED);
    let u0 = match &args.field {
        Some(path) => load_field(path)?,
        None => critical_datum(metric, cfg.bandlimit, cfg.p, cfg.amplitude, seed),
    };
    let settings = PicardSettings { oversample: cfg.oversample, ..PicardSettings::default() };
    let t = if args.find_t { find_t(&u0, &nl, cfg.t_final, cfg.n, settings, 12)?.0 } else { cfg.t_final };
    let grid = TimeGrid::new(t, cfg.n)?;
    let (u, diag) = picard_solve(&u0, &nl, grid, settings)?;
    let split = splitstep_solve(&u0, &nl, grid.dt(), cfg.n, cfg.oversample)?;
    let agreement = u.frames.iter().zip(&split.frames).map(|(a, b)| (a - b).l2_norm()).fold(0.0, f64::max);
    let last = u.frames.last().expect("time grid has at least one frame");

    fs::create_dir_all(&cfg.output)?;
    save_field(cfg.output.join("solution.field.json"), last)?;
    let summary = json!({
        "config": cfg,
        "T": t,
        "n": cfg.n,
        "s_c": nl.s_c(),
        "initial_norm": sobolev_norm(&u0, nl.s_c()),
        "mass": { "initial": mass(&u0), "final": mass(last) },
        "splitstep_agreement": agreement,
        "diagnostics": diag,
    });
    write_text(&cfg.output.join("solve.json"), &serde_json::to_string_pretty(&summary).expect("plain data"))?;
    Ok(summary)
}

// -- verify -------------------------------------------------------------------

pub struct VerifyArgs {
    pub preset: String,
    pub config: Option<PathBuf>,
    pub trials: Option<usize>,
    pub slack: Option<f64>,
    pub seed: Option<u64>,
    pub allow_unsafe: bool,
    pub allow_large_t: bool,
    pub output: Option<PathBuf>,
}

/// Report JSON with the run configuration embedded.
pub fn report_json(report: &ExperimentReport, cfg: &RunConfig) -> String {
    let mut value = serde_json::to_value(report).expect("plain data");
    value["config"] = serde_json::to_value(cfg).expect("plain data");
    serde_json::to_string_pretty(&value).expect("plain data")
}

pub fn verify(args: &VerifyArgs, log: &mut impl std::io::Write) -> Result<Vec<ExperimentReport>> {
    let mut cfg = match &args.config {
        Some(path) => load_config(path, &[])?,
        None => RunConfig::default(),
    };
    cfg.seed = resolve_seed(args.seed, cfg.seed)?;
    if let Some(out) = &args.output {
        cfg.output = out.clone();
    }
    let specs = if args.preset == "all" { preset_registry() } else { lookup(&args.preset)? };
    fs::create_dir_all(&cfg.output)?;
    let mut reports = Vec::new();
    for mut spec in specs {
        if let Some(t) = args.trials {
            spec.trials = t;
        }
        if let Some(s) = args.slack {
            spec.slack = s;
        }
        if let Some(seed) = cfg.seed {
            spec.seed = seed;
        }
        check_horizon(spec.time.t_max, args.allow_large_t)?;
        let report = run_estimate_with(&spec, RunOptions { allow_unsafe: args.allow_unsafe })?;
        write_text(&cfg.output.join(format!("{}.json", report.preset)), &report_json(&report, &cfg))?;
        write_text(&cfg.output.join(format!("{}.csv", report.preset)), &report.to_csv())?;
        let slope = report.slope.as_ref().map(|f| format!("{:+.4}", f.value)).unwrap_or_else(|| "n/a".into());
        writeln!(log, "{:<12} {:<28} slope {slope:<8} {}", report.verdict.as_str().to_uppercase(), report.preset, report.summary)?;
        reports.push(report);
    }
    Ok(reports)
}

pub fn any_failed(reports: &[ExperimentReport]) -> bool {
    reports.iter().any(|r| r.verdict == Verdict::Fail)
}

// -- norms --------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Hs,
    Lp,
    Y,
    V2,
}

/// `hs`: `‖u‖_{Hˢ}`. `lp`: `‖u‖_{L^s}` on the grid. `y`, `v2`: norms of the free
/// flow of `u` on `[0, T)`; `v2` uses the untwisted coefficients, so it sees the
/// oscillation the `Yˢ` norm removes.
pub fn field_norm(field: &SpectralField, kind: NormKind, s: f64, t: f64, n: usize) -> Result<f64> {
    match kind {
        NormKind::Hs => Ok(sobolev_norm(field, s)),
        NormKind::Lp => {
            if !(s >= 1.0) {
                return Err(CliError::Usage(format!("Lebesgue exponent must be at least 1, got {s}")));
            }
            Ok(to_grid(field, 2).lp_norm(s))
        }
        NormKind::Y | NormKind::V2 => {
            let flow = SpaceTimePath::free_flow(TimeGrid::new(t, n)?, field);
            if kind == NormKind::Y {
                return Ok(y_norm(&flow, s));
            }
            let metric = field.metric;
            let sum: f64 = field
                .modes()
                .map(|xi| metric.bracket(xi).powf(2.0 * s) * v2_norm_sq(&flow.mode_path(xi).values))
                .sum();
            Ok(sum.sqrt())
        }
    }
}

// -- field --------------------------------------------------------------------

pub fn random_field(bandlimit: usize, decay: f64, amplitude: f64, seed: u64) -> SpectralField {
    let metric = TorusMetric::generic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = SpectralField::random(metric, bandlimit, &mut rng, |xi| metric.bracket(xi).powf(-decay));
    &raw * (amplitude / raw.l2_norm())
}

pub fn shell_field(bandlimit: usize, n: u64, amplitude: f64, seed: u64) -> Result<SpectralField> {
    let shell = project_dyadic(&random_field(bandlimit, 0.0, 1.0, seed), DyadicIndex::new(n)?, torus_nls::littlewood_paley::CutoffProfile::Sharp);
    let norm = shell.l2_norm();
    if norm == 0.0 {
        return Err(CliError::Usage(format!("shell N = {n} is empty at bandlimit {bandlimit}")));
    }
    Ok(&shell * (amplitude / norm))
}

pub fn free_flow_field(input: &Path, t: f64) -> Result<SpectralField> {
    Ok(propagate(&load_field(input)?, t))
}

// -- report summarize ---------------------------------------------------------

/// Concatenate every report CSV in `dir` (sorted by name) under one header.
pub fn summarize(dir: &Path) -> Result<(String, usize)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    paths.sort();
    let header = ExperimentReport::CSV_HEADER;
    let mut out = format!("{header}\n");
    let mut rows = 0;
    for path in paths {
        let text = fs::read_to_string(&path)?;
        let mut lines = text.lines();
        if lines.next() != Some(header) {
            return Err(CliError::Usage(format!("{}: not a report CSV (unexpected header)", path.display())));
        }
        for line in lines.filter(|l| !l.is_empty()) {
            out.push_str(line);
            out.push('\n');
            rows += 1;
        }
    }
    Ok((out, rows))
}

pub fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
