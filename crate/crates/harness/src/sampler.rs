//! Random data generators for the experiments.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use torus_nls::evolution::propagate;
use torus_nls::lattice::{FreqIndex, SpectralField, TorusMetric};
use torus_nls::littlewood_paley::{psi_weight, CutoffProfile, DyadicIndex};
use torus_nls::nonlinearity::{PowerNonlinearity, Sign};
use torus_nls::paths::{SpaceTimePath, TimeGrid};
use torus_nls::solver::splitstep_solve;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// Time-independent random coefficients on the support.
    GaussianShell,
    /// Linear evolution of random data.
    FreeFlow,
    /// Free flows restarted with fresh data at random grid times.
    StepAtom,
    /// Split-step evolution of small random data under the nonlinear flow.
    SolverOutput,
}

impl SamplerKind {
    pub fn name(&self) -> &'static str {
        match self {
            SamplerKind::GaussianShell => "gaussian_shell",
            SamplerKind::FreeFlow => "free_flow",
            SamplerKind::StepAtom => "step_atom",
            SamplerKind::SolverOutput => "solver_output",
        }
    }
}

/// Frequency support relative to the scale `N` of a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// `[−N/2, N/2)³`
    Cube,
    /// Sharp dyadic shell `N/2 < |ξ| ≤ N` (`|ξ| ≤ 1` for `N = 1`).
    Shell,
    /// `|ξ| ≤ N`
    Ball,
    /// The whole lattice.
    Full,
}

impl Support {
    pub fn contains(&self, n: u64, xi: FreqIndex) -> bool {
        match self {
            Support::Cube => {
                let h = (n / 2) as i64;
                xi.0.iter().all(|&c| c >= -h && c < (n as i64) - h)
            }
            Support::Shell => DyadicIndex::new(n).map(|d| psi_weight(CutoffProfile::Sharp, d, xi) > 0.0).unwrap_or(false),
            Support::Ball => xi.norm_sq() <= (n * n) as i64,
            Support::Full => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    /// `L²` norm of the data at `t = 0` (of each step for [`SamplerKind::StepAtom`], jointly).
    pub amplitude: f64,
    pub support: Support,
    /// Coefficient weight `⟨ξ⟩^{−decay}` on the support.
    #[serde(default)]
    pub decay: f64,
    /// Phase the free-flow data so that it focuses at a random point and grid time.
    #[serde(default)]
    pub focused: bool,
    /// Number of steps of a step atom.
    #[serde(default = "default_pieces")]
    pub pieces: usize,
}

fn default_pieces() -> usize {
    3
}

impl SamplerSpec {
    pub fn new(kind: SamplerKind, support: Support) -> Self {
        SamplerSpec { kind, amplitude: 1.0, support, decay: 0.0, focused: false, pieces: default_pieces() }
    }

    pub fn with_decay(mut self, decay: f64) -> Self {
        self.decay = decay;
        self
    }

    pub fn focused(mut self) -> Self {
        self.focused = true;
        self
    }

    pub fn with_amplitude(mut self, a: f64) -> Self {
        self.amplitude = a;
        self
    }

    /// Label used in reports.
    pub fn label(&self) -> String {
        let mut label = self.kind.name().to_string();
        if self.focused {
            label.push_str("_focused");
        }
        label
    }
}

/// Everything a sampler needs besides the randomness.
#[derive(Debug, Clone, Copy)]
pub struct SampleContext {
    pub metric: TorusMetric,
    pub bandlimit: usize,
    pub grid: TimeGrid,
    /// Frequency scale `N` the support refers to.
    pub scale: u64,
    /// Nonlinearity for [`SamplerKind::SolverOutput`].
    pub p: f64,
}

fn weight(spec: &SamplerSpec, ctx: &SampleContext, xi: FreqIndex) -> f64 {
    if spec.support.contains(ctx.scale, xi) {
        ctx.metric.bracket(xi).powf(-spec.decay)
    } else {
        0.0
    }
}

fn normalised(field: SpectralField, amplitude: f64, what: &str) -> Result<SpectralField> {
    let n = field.l2_norm();
    if n == 0.0 {
        return Err(HarnessError::SamplerDegenerate(what.to_string()));
    }
    Ok(&field * (amplitude / n))
}

/// Random data on the support, `L²`-normalised to `amplitude`.
pub fn sample_field<R: Rng + ?Sized>(spec: &SamplerSpec, ctx: &SampleContext, rng: &mut R, amplitude: f64) -> Result<SpectralField> {
    let raw = SpectralField::random(ctx.metric, ctx.bandlimit, rng, |xi| weight(spec, ctx, xi));
    normalised(raw, amplitude, "empty support")
}

/// Positive amplitudes phased so that the free flow peaks at `(x₀, t₀)`.
fn focused_datum<R: Rng + ?Sized>(spec: &SamplerSpec, ctx: &SampleContext, rng: &mut R) -> Result<SpectralField> {
    let x0: [f64; 3] = [rng.random(), rng.random(), rng.random()];
    let k0 = rng.random_range(0..ctx.grid.n);
    let t0 = ctx.grid.time(k0);
    let raw = SpectralField::from_fn(ctx.metric, ctx.bandlimit, |xi| {
        let g: f64 = rng.sample(StandardNormal);
        let w = weight(spec, ctx, xi);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let dot: f64 = (0..3).map(|i| xi.0[i] as f64 * x0[i]).sum();
        Complex64::from_polar(w * g.abs(), -std::f64::consts::TAU * dot)
    });
    // undo the flow up to t₀
    let undone = propagate(&raw, -t0);
    normalised(undone, spec.amplitude, "empty support")
}

/// One random space-time path on `ctx.grid`.
pub fn sample_path<R: Rng + ?Sized>(spec: &SamplerSpec, ctx: &SampleContext, rng: &mut R) -> Result<SpaceTimePath> {
    let grid = ctx.grid;
    match spec.kind {
        SamplerKind::GaussianShell => {
            let f = sample_field(spec, ctx, rng, spec.amplitude)?;
            SpaceTimePath::new(grid, vec![f; grid.n]).map_err(Into::into)
        }
        SamplerKind::FreeFlow => {
            let f = if spec.focused { focused_datum(spec, ctx, rng)? } else { sample_field(spec, ctx, rng, spec.amplitude)? };
            Ok(SpaceTimePath::free_flow(grid, &f))
        }
        SamplerKind::StepAtom => {
            let pieces = spec.pieces.clamp(1, grid.n);
            let mut cuts: Vec<usize> = vec![0];
            while cuts.len() < pieces {
                let c = rng.random_range(1..grid.n);
                if !cuts.contains(&c) {
                    cuts.push(c);
                }
            }
            cuts.sort_unstable();
            cuts.push(grid.n);
            let weights: Vec<f64> = (0..pieces).map(|_| rng.random_range(0.2..1.0)).collect();
            let total = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
            let mut frames = Vec::with_capacity(grid.n);
            for j in 0..pieces {
                let phi = sample_field(spec, ctx, rng, spec.amplitude * weights[j] / total)?;
                for k in cuts[j]..cuts[j + 1] {
                    frames.push(propagate(&phi, grid.time(k)));
                }
            }
            SpaceTimePath::new(grid, frames).map_err(Into::into)
        }
        SamplerKind::SolverOutput => {
            let nl = PowerNonlinearity::new(ctx.p.max(2.0), Sign::Plus)?;
            let u0 = sample_field(spec, ctx, rng, spec.amplitude)?;
            let out = splitstep_solve(&u0, &nl, grid.dt(), grid.n, 2)?;
            SpaceTimePath::new(grid, out.frames).map_err(Into::into)
        }
    }
}
