//! Local solutions by Picard iteration of the Duhamel operator, and a Strang
//! split-step integrator used as an independent check.
//!
//! Equation: `i∂ₜu + Δu = sign·|u|^p u`; `sign = +1` is defocusing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{duhamel_operator, PropagatorPlan};
use crate::lattice::{q_form, to_grid, to_grid_n, to_spectral, GridField, SpectralField};
use crate::nonlinearity::PowerNonlinearity;
use crate::paths::{sobolev_norm, SpaceTimePath, TimeGrid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PicardDiagnostics {
    /// `d_k = ‖u^{(k+1)} − u^{(k)}‖_{L^∞_t H^{s_c}}`.
    pub distances: Vec<f64>,
    /// `d_{k+1}/d_k`; `NaN`-free, recorded even when above 1.
    pub ratios: Vec<f64>,
    /// `‖Φ(u*) − u*‖_{L^∞_t H^{s_c}}` for the returned iterate.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PicardSettings {
    pub oversample: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PicardSettings {
    fn default() -> Self {
        PicardSettings { oversample: 2, tol: 1e-12, max_iter: 50 }
    }
}

fn sup_distance(a: &SpaceTimePath, b: &SpaceTimePath, s: f64) -> f64 {
    a.frames.iter().zip(&b.frames).map(|(x, y)| sobolev_norm(&(x - y), s)).fold(0.0, f64::max)
}

/// Iterate `u ↦ Φ(u)` from `start`, returning the last iterate even without convergence.
pub fn picard_iterate(
    u0: &SpectralField,
    nl: &PowerNonlinearity,
    start: SpaceTimePath,
    settings: PicardSettings,
) -> Result<(SpaceTimePath, PicardDiagnostics)> {
    if !(settings.tol > 0.0) || settings.max_iter == 0 {
        return Err(Error::InvalidArgument("tol must be positive and max_iter at least 1".into()));
    }
    let s = nl.s_c();
    let mut u = start;
    let mut distances = Vec::new();
    let mut ratios = Vec::new();
    let mut converged = false;
    for _ in 0..settings.max_iter {
        let next = duhamel_operator(&u, u0, nl, settings.oversample)?;
        let d = sup_distance(&next, &u, s);
        if !d.is_finite() {
            return Err(Error::NonFinite("Picard iterate"));
        }
        if let Some(&prev) = distances.last() {
            ratios.push(if prev > 0.0 { d / prev } else { 0.0 });
        }
        distances.push(d);
        u = next;
        if d < settings.tol {
            converged = true;
            break;
        }
    }
    let residual = sup_distance(&duhamel_operator(&u, u0, nl, settings.oversample)?, &u, s);
    Ok((u, PicardDiagnostics { distances, ratios, residual, converged }))
}

/// Picard iteration from the free flow; `NoConvergence` when `tol` is not reached.
pub fn picard_solve(
    u0: &SpectralField,
    nl: &PowerNonlinearity,
    grid: TimeGrid,
    settings: PicardSettings,
) -> Result<(SpaceTimePath, PicardDiagnostics)> {
    let (u, diag) = picard_iterate(u0, nl, SpaceTimePath::free_flow(grid, u0), settings)?;
    if !diag.converged {
        return Err(Error::NoConvergence {
            max_iter: settings.max_iter,
            last_ratio: diag.ratios.last().copied().unwrap_or(f64::NAN),
        });
    }
    Ok((u, diag))
}

/// Halve `T` from `t_start` until Picard converges; returns the accepted `T`.
pub fn find_t(
    u0: &SpectralField,
    nl: &PowerNonlinearity,
    t_start: f64,
    n: usize,
    settings: PicardSettings,
    max_halvings: usize,
) -> Result<(f64, PicardDiagnostics)> {
    let mut t = t_start;
    let mut last = Error::InvalidArgument("no attempt made".into());
    for _ in 0..=max_halvings {
        match picard_solve(u0, nl, TimeGrid::new(t, n)?, settings) {
            Ok((_, diag)) => return Ok((t, diag)),
            Err(e @ Error::NoConvergence { .. }) | Err(e @ Error::NonFinite(_)) => last = e,
            Err(e) => return Err(e),
        }
        t *= 0.5;
    }
    Err(last)
}

/// Strang splitting on the odd grid `2M'+1`, `M' = oversample·M`, where the
/// DFT is a bijection onto the lattice of bandlimit `M'` and mass is preserved.
#[derive(Debug, Clone)]
pub struct SplitStep {
    nl: PowerNonlinearity,
    dt: f64,
    bandlimit: usize,
    inner_bandlimit: usize,
    plan: PropagatorPlan,
    state: GridField,
    zero_nonlinearity: bool,
}

impl SplitStep {
    pub fn new(u0: &SpectralField, nl: &PowerNonlinearity, dt: f64, oversample: usize) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        let inner = oversample.max(1) * u0.bandlimit;
        let n = 2 * inner + 1;
        let state = to_grid_n(&u0.with_bandlimit(inner), n)?;
        Ok(SplitStep {
            nl: *nl,
            dt,
            bandlimit: u0.bandlimit,
            inner_bandlimit: inner,
            plan: PropagatorPlan::new(u0.metric, inner, dt),
            state,
            zero_nonlinearity: false,
        })
    }

    /// Drop the nonlinear sub-steps (pure free evolution).
    pub fn linear_only(mut self) -> Self {
        self.zero_nonlinearity = true;
        self
    }

    fn nonlinear_half(&mut self) {
        if self.zero_nonlinearity {
            return;
        }
        let k = -self.nl.sign.value() * 0.5 * self.dt;
        let p = self.nl.p;
        for z in self.state.samples.iter_mut() {
            let r = z.norm();
            if r > 0.0 {
                *z *= Complex64::from_polar(1.0, k * r.powf(p));
            }
        }
    }

    pub fn step(&mut self) -> Result<()> {
        self.nonlinear_half();
        let mut spec = to_spectral(&self.state, self.inner_bandlimit)?;
        self.plan.apply_in_place(&mut spec);
        self.state = to_grid_n(&spec, self.state.n)?;
        self.nonlinear_half();
        Ok(())
    }

    /// Current state truncated to the output bandlimit.
    pub fn state(&self) -> Result<SpectralField> {
        Ok(to_spectral(&self.state, self.inner_bandlimit)?.with_bandlimit(self.bandlimit))
    }

    /// Current state on the full internal lattice.
    pub fn full_state(&self) -> Result<SpectralField> {
        to_spectral(&self.state, self.inner_bandlimit)
    }
}

/// Frames at `t_k = k·dt`, `k = 0..steps−1`, on a grid with `T = dt·steps`.
pub fn splitstep_solve(
    u0: &SpectralField,
    nl: &PowerNonlinearity,
    dt: f64,
    steps: usize,
    oversample: usize,
) -> Result<SpaceTimePath> {
    let mut ss = SplitStep::new(u0, nl, dt, oversample)?;
    let grid = TimeGrid::new(dt * steps as f64, steps)?;
    let mut frames = Vec::with_capacity(steps);
    for k in 0..steps {
        if k > 0 {
            ss.step()?;
        }
        frames.push(ss.state()?);
    }
    SpaceTimePath::new(grid, frames)
}

/// `‖u‖²_{L²}`.
pub fn mass(field: &SpectralField) -> f64 {
    field.coeffs.iter().map(|c| c.norm_sqr()).sum()
}

/// `½‖∇u‖²_{L²} + sign/(p+2)·‖u‖^{p+2}_{L^{p+2}}`, with `‖∇u‖² = Σ cQ(ξ)|û(ξ)|²`.
pub fn energy(field: &SpectralField, nl: &PowerNonlinearity, oversample: usize) -> f64 {
    let metric = field.metric;
    let kinetic: f64 = field
        .coeffs
        .iter()
        .zip(field.modes())
        .map(|(c, xi)| metric.laplace_scale * q_form(&metric, xi) * c.norm_sqr())
        .sum();
    let q = nl.p + 2.0;
    let potential = to_grid(field, oversample).lp_norm(q).powf(q);
    0.5 * kinetic + nl.sign.value() / q * potential
}
