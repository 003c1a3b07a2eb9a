use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use torus_nls::lattice::{grid_size, SpectralField, TorusMetric};
use torus_nls::littlewood_paley::CutoffProfile;
use torus_nls::nonlinearity::{apply_f, PowerNonlinearity, Sign};

use crate::error::{HarnessError, Result};
use crate::measure::{measure, CheckValue, Measurement};
use crate::slope::{fit_scaling_slope, SlopeFit};
use crate::spec::{EstimateKind, EstimateSpec, VerdictRule};

/// Largest bandlimit allowed without `allow_unsafe` (lattice `33³`).
pub const GUARD_BANDLIMIT: usize = 16;
/// Largest number of time samples allowed without `allow_unsafe`.
pub const GUARD_TIME_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N2", default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    pub sampler: String,
    pub trial: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Largest ratio at one scale (one `(N₁, N₂)` cell for the bilinear rule).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N2", default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub max_value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub seed: u64,
    pub metric: TorusMetric,
    pub oversample: usize,
    pub profile: CutoffProfile,
    pub cutoff: String,
    pub time_window: String,
    pub normalization: String,
    /// `max|F_4(u) − F_8(u)|` for a unit random field at bandlimit 4, when `p` is not an even integer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aliasing_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub preset: String,
    pub spec: EstimateSpec,
    pub ratios: Vec<RatioRecord>,
    pub max_ratio: f64,
    pub series: Vec<SeriesPoint>,
    pub slope: Option<SlopeFit>,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    pub flags: Vec<String>,
    pub summary: String,
    pub environment: Environment,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Skip the desk-scale guard.
    pub allow_unsafe: bool,
}

pub fn run_estimate(spec: &EstimateSpec) -> Result<ExperimentReport> {
    run_estimate_with(spec, RunOptions::default())
}

fn guard(spec: &EstimateSpec) -> Result<()> {
    for &n in &spec.dyadic_range {
        let m = spec.bandlimit_for(n);
        if m > GUARD_BANDLIMIT {
            return Err(HarnessError::GuardExceeded(format!(
                "{}: bandlimit {m} at N = {n} exceeds {GUARD_BANDLIMIT} (lattice {}³)",
                spec.name,
                2 * m + 1
            )));
        }
    }
    if spec.time.n > GUARD_TIME_SAMPLES {
        return Err(HarnessError::GuardExceeded(format!(
            "{}: {} time samples exceed {GUARD_TIME_SAMPLES}",
            spec.name, spec.time.n
        )));
    }
    Ok(())
}

/// Seed of the stream for scale index `i`, sampler `j` and trial `k`.
pub fn trial_seed(seed: u64, i: usize, j: usize, k: usize) -> u64 {
    seed ^ (((i as u64) << 32) | ((j as u64) << 24) | k as u64)
}

pub fn run_estimate_with(spec: &EstimateSpec, opts: RunOptions) -> Result<ExperimentReport> {
    spec.validate()?;
    if !opts.allow_unsafe {
        guard(spec)?;
    }
    let mut tasks = Vec::new();
    for (i, &n) in spec.dyadic_range.iter().enumerate() {
        for j in 0..spec.samplers.len() {
            for k in 0..spec.trials {
                tasks.push((i, n, j, k));
            }
        }
    }
    let results: Vec<Result<Measurement>> = tasks
        .par_iter()
        .map(|&(i, n, j, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(spec.seed, i, j, k));
            measure(spec, &spec.samplers[j], n, &mut rng)
        })
        .collect();

    let mut ratios = Vec::new();
    let mut check_values: Vec<CheckValue> = Vec::new();
    for (&(_, n, j, k), res) in tasks.iter().zip(results) {
        let m = res?;
        for s in m.samples {
            if !(s.lhs.is_finite() && s.rhs.is_finite()) {
                return Err(HarnessError::NonFinite(format!("{} at N = {n}, trial {k}", spec.name)));
            }
            let ratio = if s.lhs == 0.0 {
                0.0
            } else if s.rhs == 0.0 {
                return Err(HarnessError::SamplerDegenerate(format!("{}: zero right-hand side at N = {n}", spec.name)));
            } else {
                s.lhs / s.rhs
            };
            ratios.push(RatioRecord {
                n,
                n2: s.n2,
                sampler: spec.samplers[j].label(),
                trial: k,
                amplitude: s.amplitude,
                lhs: s.lhs,
                rhs: s.rhs,
                ratio,
            });
        }
        check_values.extend(m.checks);
    }
    if ratios.iter().all(|r| r.rhs == 0.0) {
        return Err(HarnessError::SamplerDegenerate(spec.name.clone()));
    }
    let checks = aggregate_checks(&check_values);
    let decision = decide(spec, &ratios, &checks);
    let max_ratio = ratios.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let summary = summary(spec, decision.verdict);
    Ok(ExperimentReport {
        preset: spec.name.clone(),
        spec: spec.clone(),
        ratios,
        max_ratio,
        series: decision.series,
        slope: decision.slope,
        checks,
        verdict: decision.verdict,
        flags: decision.flags,
        summary,
        environment: environment(spec)?,
    })
}

fn summary(spec: &EstimateSpec, v: Verdict) -> String {
    let name = &spec.name;
    match (&spec.kind, v) {
        (EstimateKind::Contraction { .. }, Verdict::Pass) => format!("{name}: consistent with the contraction estimate"),
        (_, Verdict::Pass) => format!("{name}: ratios consistent with the predicted scaling"),
        (_, Verdict::Fail) => format!("{name}: ratios violate the predicted scaling"),
        (_, Verdict::Inconclusive) => format!("{name}: inconclusive"),
    }
}

fn aggregate_checks(values: &[CheckValue]) -> Vec<CheckRecord> {
    let mut by: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
    for c in values {
        let e = by.entry(&c.name).or_insert((0.0, c.threshold));
        e.0 = e.0.max(c.value);
        e.1 = e.1.min(c.threshold);
    }
    by.into_iter()
        .map(|(name, (max_value, threshold))| CheckRecord {
            name: name.to_string(),
            max_value,
            threshold,
            pass: max_value <= threshold,
        })
        .collect()
}

fn environment(spec: &EstimateSpec) -> Result<Environment> {
    let aliasing_residual = match spec.p {
        Some(p) if !(p.fract() == 0.0 && (p as u64) % 2 == 0) => {
            let nl = PowerNonlinearity::new(p, Sign::Plus)?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let raw = SpectralField::random(spec.metric, 4, &mut rng, |_| 1.0);
            let u = &raw * (1.0 / raw.l2_norm());
            Some(apply_f(&u, &nl, 4)?.max_abs_diff(&apply_f(&u, &nl, 8)?))
        }
        _ => None,
    };
    let t = &spec.time;
    let time_window = match t.tau {
        Some(tau) => format!("T = min({}, {tau}/N^2), {} samples", t.t_max, t.n),
        None => format!("T = {}, {} samples", t.t_max, t.n),
    };
    let m = spec.bandlimit_for(*spec.dyadic_range.last().expect("validated"));
    Ok(Environment {
        seed: spec.seed,
        metric: spec.metric,
        oversample: spec.oversample,
        profile: spec.profile,
        cutoff: match spec.profile {
            CutoffProfile::Smooth => "radial phi = 1 on |xi| <= 1, 0 on |xi| >= 2, exp(-1/t) glue".into(),
            CutoffProfile::Sharp => "indicator of |xi| <= N".into(),
        },
        time_window,
        normalization: format!(
            "L2 norm of data at t = 0 set to the sampler amplitude; ratios exclude N^predicted; top grid {}^3",
            grid_size(m, spec.oversample)
        ),
        aliasing_residual,
    })
}

struct Decision {
    verdict: Verdict,
    slope: Option<SlopeFit>,
    series: Vec<SeriesPoint>,
    flags: Vec<String>,
}

/// `max(top half) ≤ cap · max(bottom half)` of a sequence ordered by scale.
fn bounded(values: &[f64], cap: f64) -> bool {
    if values.len() < 2 {
        return true;
    }
    let half = values.len() / 2;
    let bottom = values[..half].iter().copied().fold(0.0, f64::max);
    let top = values[values.len() - half..].iter().copied().fold(0.0, f64::max);
    top <= cap * bottom
}

fn max_by_scale(ratios: &[RatioRecord], key: impl Fn(&RatioRecord) -> (u64, Option<u64>)) -> Vec<SeriesPoint> {
    let mut by: BTreeMap<(u64, Option<u64>), f64> = BTreeMap::new();
    for r in ratios {
        let e = by.entry(key(r)).or_insert(0.0);
        *e = e.max(r.ratio);
    }
    by.into_iter().map(|((n, n2), max_ratio)| SeriesPoint { n, n2, max_ratio }).collect()
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Pure verdict from the ratio table, the checks and the thresholds in `spec`.
fn decide(spec: &EstimateSpec, ratios: &[RatioRecord], checks: &[CheckRecord]) -> Decision {
    let mut flags = Vec::new();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        flags.push(format!("failed checks: {}", failed.join(", ")));
    }
    let pred = spec.predicted_exponent;
    let finish = |ok: bool, slope, series, flags| {
        let verdict = if ok && failed.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Decision { verdict, slope, series, flags }
    };

    if ratios.iter().all(|r| r.ratio == 0.0) {
        flags.push("degenerate".into());
        let series = max_by_scale(ratios, |r| (r.n, r.n2));
        return finish(true, None, series, flags);
    }

    match spec.verdict {
        VerdictRule::Scaling | VerdictRule::Boundedness => {
            let series = max_by_scale(ratios, |r| (r.n, None));
            // a scale where every ratio vanishes satisfies the bound trivially
            let live: Vec<&SeriesPoint> = series.iter().filter(|p| p.max_ratio > 0.0).collect();
            if live.len() < series.len() {
                let empty: Vec<String> = series.iter().filter(|p| p.max_ratio == 0.0).map(|p| p.n.to_string()).collect();
                flags.push(format!("identically zero at N = {}", empty.join(", ")));
            }
            let normalised: Vec<f64> = live.iter().map(|p| p.max_ratio / (p.n as f64).powf(pred)).collect();
            let ok_bounded = bounded(&normalised, spec.ratio_cap);
            let pts: Vec<(f64, f64)> = live.iter().map(|p| (p.n as f64, p.max_ratio)).collect();
            let fit = fit_scaling_slope(&pts);
            match (spec.verdict, fit) {
                (VerdictRule::Scaling, Ok(fit)) => {
                    let ok = fit.value <= pred + spec.slack && ok_bounded;
                    finish(ok, Some(fit), series, flags)
                }
                (VerdictRule::Scaling, Err(e)) => {
                    flags.push(e.to_string());
                    let verdict = if failed.is_empty() && ok_bounded { Verdict::Inconclusive } else { Verdict::Fail };
                    Decision { verdict, slope: None, series, flags }
                }
                (_, fit) => finish(ok_bounded, fit.ok(), series, flags),
            }
        }
        VerdictRule::Bilinear => {
            let cells = max_by_scale(ratios, |r| (r.n, r.n2));
            let mut by_n2: BTreeMap<u64, Vec<(u64, f64)>> = BTreeMap::new();
            for c in &cells {
                by_n2.entry(c.n2.unwrap_or(c.n)).or_default().push((c.n, c.max_ratio));
            }
            let mut ok = true;
            for (n2, row) in &by_n2 {
                let vals: Vec<f64> = row.iter().map(|x| x.1).collect();
                if !bounded(&vals, spec.ratio_cap) {
                    ok = false;
                    flags.push(format!("not uniform in N1 at N2 = {n2}"));
                }
            }
            let pts: Vec<(f64, f64)> = by_n2
                .iter()
                .map(|(n2, row)| (*n2 as f64, row.iter().map(|x| x.1).fold(0.0, f64::max)))
                .collect();
            match fit_scaling_slope(&pts) {
                Ok(fit) => {
                    let ok = ok && fit.value <= pred + spec.slack;
                    finish(ok, Some(fit), cells, flags)
                }
                Err(e) => {
                    flags.push(e.to_string());
                    let verdict = if ok && failed.is_empty() { Verdict::Inconclusive } else { Verdict::Fail };
                    Decision { verdict, slope: None, series: cells, flags }
                }
            }
        }
        VerdictRule::Homogeneity => {
            let series = max_by_scale(ratios, |r| (r.n, None));
            let mut vals: Vec<f64> = ratios.iter().map(|r| r.ratio).collect();
            let max = vals.iter().copied().fold(0.0, f64::max);
            let med = median(&mut vals);
            let ok_cap = max <= spec.ratio_cap * med;
            if !ok_cap {
                flags.push(format!("max ratio {max:.4e} exceeds {} x median {med:.4e}", spec.ratio_cap));
            }
            let pts: Vec<(f64, f64)> = ratios.iter().filter_map(|r| r.amplitude.map(|a| (a, r.ratio))).collect();
            match fit_scaling_slope(&pts) {
                Ok(fit) => {
                    let ok = ok_cap && fit.value.abs() <= spec.slack;
                    finish(ok, Some(fit), series, flags)
                }
                Err(e) => {
                    flags.push(e.to_string());
                    Decision { verdict: Verdict::Inconclusive, slope: None, series, flags }
                }
            }
        }
        VerdictRule::UpperBound { bound } => {
            let series = max_by_scale(ratios, |r| (r.n, None));
            let ok = ratios.iter().all(|r| r.ratio <= bound);
            finish(ok, None, series, flags)
        }
    }
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub const CSV_HEADER: &'static str = "preset,N,N2,sampler,trial,amplitude,lhs,rhs,ratio";

    /// One row per ratio record, with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.ratios {
            let opt = |x: Option<String>| x.unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{:e},{:e},{:e}\n",
                self.preset,
                r.n,
                opt(r.n2.map(|v| v.to_string())),
                r.sampler,
                r.trial,
                opt(r.amplitude.map(|v| format!("{v:e}"))),
                r.lhs,
                r.rhs,
                r.ratio
            ));
        }
        out
    }
}
