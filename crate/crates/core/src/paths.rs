//! Space-time paths on a uniform time grid and the norms built on them:
//! mixed Lebesgue norms, `Hˢ`, exact discrete `V²`, `Yˢ`, a `U²` step bound,
//! and the space-time duality pairing.
//!
//! Paths are right-continuous step functions on `[0, T)` with the terminal
//! convention `v(T) = 0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{free_phase, propagate};
use crate::lattice::{modes, to_grid, FreqIndex, MultiplierKind, SpectralField, TorusMetric};

/// `t_k = kT/n`, `k = 0..n−1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    #[serde(rename = "T")]
    pub t_final: f64,
    pub n: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, n: usize) -> Result<Self> {
        if !(t_final.is_finite() && t_final > 0.0) {
            return Err(Error::InvalidTimeGrid(format!("T must be positive, got {t_final}")));
        }
        if n < 2 {
            return Err(Error::InvalidTimeGrid(format!("need at least 2 samples, got {n}")));
        }
        Ok(TimeGrid { t_final, n })
    }

    /// Grid restricted to `0 < T ≤ 1`.
    pub fn bounded(t_final: f64, n: usize) -> Result<Self> {
        let g = TimeGrid::new(t_final, n)?;
        if t_final > 1.0 {
            return Err(Error::InvalidTimeGrid(format!("T = {t_final} exceeds 1")));
        }
        Ok(g)
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.n as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_final * k as f64 / self.n as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|k| self.time(k))
    }
}

/// One spectral frame per grid time.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimePath {
    pub grid: TimeGrid,
    pub frames: Vec<SpectralField>,
}

impl SpaceTimePath {
    pub fn new(grid: TimeGrid, frames: Vec<SpectralField>) -> Result<Self> {
        if frames.len() != grid.n {
            return Err(Error::GridMismatch(format!("{} frames for {} time samples", frames.len(), grid.n)));
        }
        let first = &frames[0];
        for f in &frames[1..] {
            if f.bandlimit != first.bandlimit || f.metric != first.metric {
                return Err(Error::GridMismatch("frames disagree on metric or bandlimit".into()));
            }
        }
        Ok(SpaceTimePath { grid, frames })
    }

    pub fn zeros(grid: TimeGrid, metric: TorusMetric, bandlimit: usize) -> Self {
        SpaceTimePath { grid, frames: vec![SpectralField::zeros(metric, bandlimit); grid.n] }
    }

    /// Frame `k` is `f(t_k)`.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> SpectralField) -> Self {
        let frames: Vec<_> = grid.times().map(f).collect();
        SpaceTimePath::new(grid, frames).expect("frames from one constructor share shape")
    }

    /// `t ↦ e^{itΔ}u₀`.
    pub fn free_flow(grid: TimeGrid, u0: &SpectralField) -> Self {
        SpaceTimePath::from_fn(grid, |t| propagate(u0, t))
    }

    pub fn metric(&self) -> TorusMetric {
        self.frames[0].metric
    }

    pub fn bandlimit(&self) -> usize {
        self.frames[0].bandlimit
    }

    pub fn map_frames(&self, f: impl Fn(&SpectralField) -> SpectralField + Sync) -> SpaceTimePath {
        SpaceTimePath { grid: self.grid, frames: self.frames.par_iter().map(&f).collect() }
    }

    pub fn scale(&self, c: f64) -> SpaceTimePath {
        self.map_frames(|f| f * c)
    }

    /// Values `û(t_k, ξ)`.
    pub fn mode_path(&self, xi: FreqIndex) -> ModePath {
        ModePath { values: self.frames.iter().map(|f| f.get(xi)).collect() }
    }

    /// Twisted values `e^{icQ(ξ)t_k}û(t_k, ξ)`, constant in `k` for a free flow.
    pub fn twisted_mode_path(&self, xi: FreqIndex) -> ModePath {
        let metric = self.metric();
        ModePath {
            values: self
                .frames
                .iter()
                .enumerate()
                .map(|(k, f)| f.get(xi) * free_phase(&metric, xi, self.grid.time(k)).conj())
                .collect(),
        }
    }

    /// `sup_k max_ξ |û(t_k,ξ) − v̂(t_k,ξ)|`.
    pub fn max_abs_diff(&self, other: &SpaceTimePath) -> f64 {
        self.frames.iter().zip(&other.frames).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &SpaceTimePath) -> Result<SpaceTimePath> {
        check_same_grid(self, other)?;
        let frames = self.frames.iter().zip(&other.frames).map(|(a, b)| a - b).collect();
        Ok(SpaceTimePath { grid: self.grid, frames })
    }
}

fn check_same_grid(a: &SpaceTimePath, b: &SpaceTimePath) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch(format!("time grids {:?} vs {:?}", a.grid, b.grid)));
    }
    if a.bandlimit() != b.bandlimit() || a.metric() != b.metric() {
        return Err(Error::GridMismatch("paths disagree on metric or bandlimit".into()));
    }
    Ok(())
}

/// One Fourier coefficient sampled on the time grid; `a(T) = 0` implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct ModePath {
    pub values: Vec<Complex64>,
}

/// `(Σ_k Δt ‖u(t_k)‖^{p_t}_{L^{p_x}})^{1/p_t}`, spatial norm on the oversampled grid.
pub fn spacetime_lp(path: &SpaceTimePath, p_t: f64, p_x: f64, oversample: usize) -> Result<f64> {
    for p in [p_t, p_x] {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidLebesgueExponent(p));
        }
    }
    let spatial: Vec<f64> = path.frames.par_iter().map(|f| to_grid(f, oversample).lp_norm(p_x)).collect();
    if p_t.is_infinite() {
        return Ok(spatial.iter().copied().fold(0.0, f64::max));
    }
    let dt = path.grid.dt();
    let s: f64 = spatial.iter().map(|v| dt * v.powf(p_t)).sum();
    Ok(s.powf(1.0 / p_t))
}

/// `(Σ_ξ ⟨ξ⟩^{2s}|û(ξ)|²)^{1/2}`.
pub fn sobolev_norm(field: &SpectralField, s: f64) -> f64 {
    let metric = field.metric;
    field
        .coeffs
        .iter()
        .zip(field.modes())
        .map(|(c, xi)| metric.bracket(xi).powf(2.0 * s) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `sup_k ‖u(t_k)‖_{Hˢ}`.
pub fn sup_sobolev(path: &SpaceTimePath, s: f64) -> f64 {
    path.frames.iter().map(|f| sobolev_norm(f, s)).fold(0.0, f64::max)
}

/// Squared `V²` seminorm by dynamic programming over grid indices.
///
/// Partitions start at `t_0` and may end with the terminal node `T` (value 0):
/// `best(0) = 0`, `best(j) = max_{i<j} best(i) + |a_j − a_i|²`, and the result is
/// `max_j best(j) + |a_j|²`.
pub fn v2_norm_sq(values: &[Complex64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len();
    let mut best = vec![0.0f64; n];
    let mut out = values[0].norm_sqr();
    for j in 1..n {
        let aj = values[j];
        let mut b = 0.0f64;
        for i in 0..j {
            b = b.max(best[i] + (aj - values[i]).norm_sqr());
        }
        best[j] = b;
        out = out.max(b + aj.norm_sqr());
    }
    out
}

pub fn v2_norm(mode: &ModePath) -> f64 {
    v2_norm_sq(&mode.values).sqrt()
}

/// Exhaustive maximum over all partitions; exponential, for testing only.
pub fn v2_norm_brute_force(values: &[Complex64]) -> f64 {
    let n = values.len();
    assert!(n <= 20, "brute force limited to short paths");
    if n == 0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    // bit i of `mask` selects index i+1; bit n−1 selects the terminal node.
    for mask in 0u32..(1u32 << n) {
        let mut prev = values[0];
        let mut s = 0.0;
        for i in 1..n {
            if mask & (1 << (i - 1)) != 0 {
                s += (values[i] - prev).norm_sqr();
                prev = values[i];
            }
        }
        if mask & (1 << (n - 1)) != 0 {
            s += prev.norm_sqr();
        }
        best = best.max(s);
    }
    best.sqrt()
}

/// Step-function atomic bound: merge equal neighbours, then `(Σ|φ_k|²)^{1/2}`.
pub fn u2_upper_bound(mode: &ModePath) -> f64 {
    let mut s = 0.0;
    let mut prev: Option<Complex64> = None;
    for v in &mode.values {
        if prev != Some(*v) {
            s += v.norm_sqr();
            prev = Some(*v);
        }
    }
    s.sqrt()
}

/// `(Σ_ξ ⟨ξ⟩^{2s} ‖e^{icQ(ξ)t}û(t,ξ)‖²_{V²})^{1/2}`.
pub fn y_norm(path: &SpaceTimePath, s: f64) -> f64 {
    let metric = path.metric();
    let all: Vec<FreqIndex> = modes(path.bandlimit()).collect();
    let parts: Vec<f64> = all
        .par_iter()
        .map(|&xi| {
            let m = path.twisted_mode_path(xi);
            if m.values.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
                return 0.0;
            }
            metric.bracket(xi).powf(2.0 * s) * v2_norm_sq(&m.values)
        })
        .collect();
    parts.iter().sum::<f64>().sqrt()
}

/// `∫₀^T ∫ f v̄ dx dt` by Parseval in `x` and the left Riemann sum in `t`.
pub fn duality_pairing(f: &SpaceTimePath, v: &SpaceTimePath) -> Result<Complex64> {
    check_same_grid(f, v)?;
    let dt = f.grid.dt();
    Ok(f.frames.iter().zip(&v.frames).map(|(a, b)| a.inner(b)).sum::<Complex64>() * dt)
}

/// `(Σ_k Δt‖f(t_k)‖²_{L²})^{1/2}`.
pub fn l2_spacetime(path: &SpaceTimePath) -> f64 {
    let dt = path.grid.dt();
    path.frames.iter().map(|f| dt * f.l2_norm().powi(2)).sum::<f64>().sqrt()
}

/// `Σ_k Δt‖f(t_k)‖_{Hˢ}`.
pub fn l1_sobolev(path: &SpaceTimePath, s: f64) -> f64 {
    let dt = path.grid.dt();
    path.frames.iter().map(|f| dt * sobolev_norm(f, s)).sum()
}

/// Largest `|⟨f, v⟩|` over `m` test paths normalised to `‖v‖_{Y^{−s}} = 1`.
///
/// Candidates in order: `⟨∇⟩^{2s}f`, the free flow of `⟨∇⟩^{2s}f(0)`, then
/// alternately random step paths (free flows restarted at random times) and
/// random free flows drawn from `seed`. Prefixes of the sequence do not depend on `m`,
/// so the value is non-decreasing in `m`.
pub fn xnorm_lower_bound(f: &SpaceTimePath, s: f64, m: usize, seed: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one candidate".into()));
    }
    if f.frames.iter().all(|fr| fr.is_zero()) {
        return Ok(0.0);
    }
    let lift = |g: &SpectralField| {
        crate::lattice::fractional_multiplier(g, 2.0 * s, MultiplierKind::JapaneseBracket).expect("bracket is positive")
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let metric = f.metric();
    let m_band = f.bandlimit();
    let grid = f.grid;
    let mut best = 0.0f64;
    for idx in 0..m {
        let v = match idx {
            0 => f.map_frames(lift),
            1 => SpaceTimePath::free_flow(grid, &lift(&f.frames[0])),
            i if i % 2 == 0 => {
                let jumps = rng.random_range(1..=4usize).min(grid.n - 1);
                let mut cuts: Vec<usize> = (0..jumps).map(|_| rng.random_range(1..grid.n)).collect();
                cuts.push(0);
                cuts.sort_unstable();
                cuts.dedup();
                let pieces: Vec<SpectralField> =
                    cuts.iter().map(|_| SpectralField::random(metric, m_band, &mut rng, |_| 1.0)).collect();
                let frames = (0..grid.n)
                    .map(|k| {
                        let piece = cuts.iter().rposition(|&c| c <= k).unwrap();
                        propagate(&pieces[piece], grid.time(k))
                    })
                    .collect();
                SpaceTimePath::new(grid, frames)?
            }
            _ => SpaceTimePath::free_flow(grid, &SpectralField::random(metric, m_band, &mut rng, |_| 1.0)),
        };
        let norm = y_norm(&v, -s);
        if norm == 0.0 {
            continue;
        }
        best = best.max(duality_pairing(f, &v)?.norm() / norm);
    }
    Ok(best)
}
