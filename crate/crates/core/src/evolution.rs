//! Linear propagator `e^{itΔ}` and the Duhamel integral.
//!
//! With `Δe_ξ = −c·Q(ξ)e_ξ` the propagator is the multiplier `e^{−icQ(ξ)t}`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{q_form, FreqIndex, SpectralField, TorusMetric};
use crate::nonlinearity::{apply_f, PowerNonlinearity};
use crate::paths::SpaceTimePath;

const TWO_PI_HI: f64 = 6.283_185_307_179_586;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `x·y·z` reduced into `(−π, π]`, carried in double-double.
fn reduced_angle(x: f64, y: f64, z: f64) -> f64 {
    let (p_hi, p_lo) = two_prod(x, y);
    let (q_hi, q_lo0) = two_prod(p_hi, z);
    let q_lo = q_lo0 + p_lo * z;
    let k = (q_hi / TWO_PI_HI).round();
    let (m_hi, m_lo0) = two_prod(k, TWO_PI_HI);
    let m_lo = m_lo0 + k * TWO_PI_LO;
    let (d_hi, d_lo0) = two_sum(q_hi, -m_hi);
    d_hi + (d_lo0 + q_lo - m_lo)
}

/// Angle `c·Q(ξ)·t` reduced modulo `2π`.
pub fn dispersion_angle(metric: &TorusMetric, xi: FreqIndex, t: f64) -> f64 {
    reduced_angle(metric.laplace_scale, q_form(metric, xi), t)
}

/// `e^{−icQ(ξ)t}`, the symbol of `e^{itΔ}`.
pub fn free_phase(metric: &TorusMetric, xi: FreqIndex, t: f64) -> Complex64 {
    let a = dispersion_angle(metric, xi, t);
    Complex64::new(a.cos(), -a.sin())
}

/// `e^{itΔ}u`.
pub fn propagate(field: &SpectralField, t: f64) -> SpectralField {
    let metric = field.metric;
    field.map_complex_multiplier(|xi| free_phase(&metric, xi, t))
}

/// Cached phases `e^{−icQ(ξ)Δt}` for repeated steps of one size.
#[derive(Debug, Clone)]
pub struct PropagatorPlan {
    pub metric: TorusMetric,
    pub bandlimit: usize,
    pub dt: f64,
    pub phases: Vec<Complex64>,
}

impl PropagatorPlan {
    pub fn new(metric: TorusMetric, bandlimit: usize, dt: f64) -> Self {
        let phases = crate::lattice::modes(bandlimit).map(|xi| free_phase(&metric, xi, dt)).collect();
        PropagatorPlan { metric, bandlimit, dt, phases }
    }

    pub fn apply(&self, field: &SpectralField) -> SpectralField {
        assert_eq!(field.bandlimit, self.bandlimit, "plan bandlimit mismatch");
        let coeffs = field.coeffs.iter().zip(&self.phases).map(|(c, p)| c * p).collect();
        SpectralField { metric: field.metric, bandlimit: field.bandlimit, coeffs }
    }

    pub fn apply_in_place(&self, field: &mut SpectralField) {
        assert_eq!(field.bandlimit, self.bandlimit, "plan bandlimit mismatch");
        for (c, p) in field.coeffs.iter_mut().zip(&self.phases) {
            *c *= p;
        }
    }
}

/// Composite trapezoid approximation of `∫₀^{t_k} e^{i(t_k−s)Δ}F(s) ds` on the path's nodes.
pub fn duhamel_integral(forcing: &SpaceTimePath, k: usize) -> Result<SpectralField> {
    if k >= forcing.frames.len() {
        return Err(Error::InvalidArgument(format!(
            "time index {k} outside grid of {} samples",
            forcing.frames.len()
        )));
    }
    let dt = forcing.grid.dt();
    let metric = forcing.metric();
    let tk = forcing.grid.time(k);
    let mut acc = SpectralField::zeros(metric, forcing.bandlimit());
    if k == 0 {
        return Ok(acc);
    }
    for j in 0..=k {
        let w = if j == 0 || j == k { 0.5 * dt } else { dt };
        let shift = tk - forcing.grid.time(j);
        let f = &forcing.frames[j];
        for ((a, c), xi) in acc.coeffs.iter_mut().zip(&f.coeffs).zip(crate::lattice::modes(f.bandlimit)) {
            if *c != Complex64::new(0.0, 0.0) {
                *a += c * free_phase(&metric, xi, shift) * w;
            }
        }
    }
    Ok(acc)
}

/// All trapezoid Duhamel integrals `D_0..D_{n−1}` via
/// `D_k = P·D_{k−1} + (Δt/2)(P·F_{k−1} + F_k)` with `P = e^{iΔtΔ}`.
pub fn duhamel_all(forcing: &SpaceTimePath) -> Vec<SpectralField> {
    let dt = forcing.grid.dt();
    let plan = PropagatorPlan::new(forcing.metric(), forcing.bandlimit(), dt);
    let mut out = Vec::with_capacity(forcing.frames.len());
    let mut d = SpectralField::zeros(forcing.metric(), forcing.bandlimit());
    out.push(d.clone());
    for k in 1..forcing.frames.len() {
        let prev = &forcing.frames[k - 1];
        let cur = &forcing.frames[k];
        for (((dc, p), fp), fc) in d.coeffs.iter_mut().zip(&plan.phases).zip(&prev.coeffs).zip(&cur.coeffs) {
            *dc = p * (*dc + fp * (0.5 * dt)) + fc * (0.5 * dt);
        }
        out.push(d.clone());
    }
    out
}

/// `Φ(u)(t_k) = e^{it_kΔ}u₀ − i·D_k[G(u)]` for an arbitrary frame map `G`.
pub fn duhamel_map(
    u: &SpaceTimePath,
    u0: &SpectralField,
    forcing: impl Fn(&SpectralField) -> Result<SpectralField> + Sync,
) -> Result<SpaceTimePath> {
    if u0.bandlimit != u.bandlimit() {
        return Err(Error::GridMismatch(format!(
            "initial datum bandlimit {} vs path bandlimit {}",
            u0.bandlimit,
            u.bandlimit()
        )));
    }
    let f_frames: Vec<SpectralField> = u.frames.par_iter().map(&forcing).collect::<Result<_>>()?;
    let f_path = SpaceTimePath::new(u.grid, f_frames)?;
    let duh = duhamel_all(&f_path);
    let minus_i = Complex64::new(0.0, -1.0);
    let frames = duh
        .iter()
        .enumerate()
        .map(|(k, d)| &propagate(u0, u.grid.time(k)) + &d.scale(minus_i))
        .collect();
    SpaceTimePath::new(u.grid, frames)
}

/// The Duhamel operator for the power nonlinearity.
pub fn duhamel_operator(
    u: &SpaceTimePath,
    u0: &SpectralField,
    nl: &PowerNonlinearity,
    oversample: usize,
) -> Result<SpaceTimePath> {
    duhamel_map(u, u0, |f| apply_f(f, nl, oversample))
}
