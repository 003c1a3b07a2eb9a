//! Irrational-torus geometry and truncated Fourier lattices.
//!
//! The torus is `ℝ³/ℤ³` with frequencies in `ℤ³`; the irrationality lives
//! in the diagonal metric, which enters only through the dispersion form
//! `Q(ξ) = θ₁ξ₁² + θ₂ξ₂² + θ₃ξ₃²`. The Laplacian acts on `e_ξ(x) = e^{2πiξ·x}`
//! as `Δe_ξ = −c·Q(ξ)e_ξ` with `c = laplace_scale` (default `4π²`).
//!
//! Coefficients of a [`SpectralField`] are stored row-major over the centred
//! cube `[−M, M]³`, `ξ₃` fastest.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::{fft3, wrap};

pub const DEFAULT_LAPLACE_SCALE: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Diagonal metric of a rectangular torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusMetric {
    pub theta: [f64; 3],
    pub laplace_scale: f64,
    /// Use `1 + |ξ|²` instead of `1 + Q(ξ)` inside the Japanese bracket.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub euclidean_bracket: bool,
}

impl TorusMetric {
    pub fn new(theta: [f64; 3], laplace_scale: f64) -> Result<Self> {
        let metric = TorusMetric { theta, laplace_scale, euclidean_bracket: false };
        metric.validate()?;
        Ok(metric)
    }

    /// The square torus `θ = (1, 1, 1)`.
    pub fn square() -> Self {
        TorusMetric { theta: [1.0; 3], laplace_scale: DEFAULT_LAPLACE_SCALE, euclidean_bracket: false }
    }

    /// A generic irrational torus `θ = (1, √2, √3)` (rounded to double precision).
    pub fn generic() -> Self {
        TorusMetric {
            theta: [1.0, 2f64.sqrt(), 3f64.sqrt()],
            laplace_scale: DEFAULT_LAPLACE_SCALE,
            euclidean_bracket: false,
        }
    }

    pub fn with_euclidean_bracket(mut self, on: bool) -> Self {
        self.euclidean_bracket = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (i, t) in self.theta.iter().enumerate() {
            if !(t.is_finite() && *t > 0.0) {
                return Err(Error::InvalidMetric(format!("theta[{i}] = {t} must be positive")));
            }
        }
        if !(self.laplace_scale.is_finite() && self.laplace_scale > 0.0) {
            return Err(Error::InvalidMetric(format!(
                "laplace_scale = {} must be positive",
                self.laplace_scale
            )));
        }
        Ok(())
    }

    /// `⟨ξ⟩ = (1 + Q(ξ))^{1/2}`, or `(1 + |ξ|²)^{1/2}` with the Euclidean knob.
    pub fn bracket(&self, xi: FreqIndex) -> f64 {
        let q = if self.euclidean_bracket { xi.norm_sq() as f64 } else { q_form(self, xi) };
        (1.0 + q).sqrt()
    }

    /// Eigenvalue of `−Δ` on `e_ξ`.
    pub fn laplace_eigenvalue(&self, xi: FreqIndex) -> f64 {
        self.laplace_scale * q_form(self, xi)
    }
}

impl Default for TorusMetric {
    fn default() -> Self {
        TorusMetric::generic()
    }
}

/// A frequency `ξ ∈ ℤ³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreqIndex(pub [i64; 3]);

impl FreqIndex {
    pub const ZERO: FreqIndex = FreqIndex([0, 0, 0]);

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        FreqIndex([a, b, c])
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Euclidean length of the integer vector.
    pub fn norm(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Add for FreqIndex {
    type Output = FreqIndex;
    fn add(self, o: FreqIndex) -> FreqIndex {
        FreqIndex([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for FreqIndex {
    type Output = FreqIndex;
    fn sub(self, o: FreqIndex) -> FreqIndex {
        FreqIndex([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

/// The dispersion form `Q(ξ) = Σ θᵢξᵢ²`.
pub fn q_form(metric: &TorusMetric, xi: FreqIndex) -> f64 {
    let [a, b, c] = xi.0;
    metric.theta[0] * (a * a) as f64 + metric.theta[1] * (b * b) as f64 + metric.theta[2] * (c * c) as f64
}

/// Side length `2M + 1` of the coefficient cube.
#[inline]
pub fn lattice_side(bandlimit: usize) -> usize {
    2 * bandlimit + 1
}

/// Complex Fourier coefficients on `[−M, M]³ ∩ ℤ³`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub metric: TorusMetric,
    pub bandlimit: usize,
    pub coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(metric: TorusMetric, bandlimit: usize) -> Self {
        let side = lattice_side(bandlimit);
        SpectralField { metric, bandlimit, coeffs: vec![Complex64::new(0.0, 0.0); side * side * side] }
    }

    pub fn from_coeffs(metric: TorusMetric, bandlimit: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        metric.validate()?;
        let side = lattice_side(bandlimit);
        let expected = side * side * side;
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount { bandlimit, expected, got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("spectral coefficients"));
        }
        Ok(SpectralField { metric, bandlimit, coeffs })
    }

    /// `value · e_ξ`.
    pub fn delta(metric: TorusMetric, bandlimit: usize, xi: FreqIndex, value: Complex64) -> Self {
        let mut f = SpectralField::zeros(metric, bandlimit);
        f.set(xi, value);
        f
    }

    pub fn from_fn(metric: TorusMetric, bandlimit: usize, mut f: impl FnMut(FreqIndex) -> Complex64) -> Self {
        let mut out = SpectralField::zeros(metric, bandlimit);
        for (idx, xi) in modes(bandlimit).enumerate() {
            out.coeffs[idx] = f(xi);
        }
        out
    }

    /// Independent complex Gaussian coefficients, `E|û(ξ)|² = weight(ξ)²`.
    pub fn random<R: Rng + ?Sized>(
        metric: TorusMetric,
        bandlimit: usize,
        rng: &mut R,
        mut weight: impl FnMut(FreqIndex) -> f64,
    ) -> Self {
        SpectralField::from_fn(metric, bandlimit, |xi| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let w = weight(xi);
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(re, im) * (w * std::f64::consts::FRAC_1_SQRT_2)
            }
        })
    }

    #[inline]
    pub fn side(&self) -> usize {
        lattice_side(self.bandlimit)
    }

    pub fn contains(&self, xi: FreqIndex) -> bool {
        xi.max_abs() <= self.bandlimit as i64
    }

    #[inline]
    pub fn index_of(&self, xi: FreqIndex) -> usize {
        let m = self.bandlimit as i64;
        let s = self.side();
        let [a, b, c] = xi.0;
        (((a + m) as usize * s) + (b + m) as usize) * s + (c + m) as usize
    }

    /// Coefficient at `ξ`; zero outside the lattice.
    pub fn get(&self, xi: FreqIndex) -> Complex64 {
        if self.contains(xi) {
            self.coeffs[self.index_of(xi)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn set(&mut self, xi: FreqIndex, value: Complex64) {
        assert!(self.contains(xi), "frequency {:?} outside bandlimit {}", xi.0, self.bandlimit);
        let i = self.index_of(xi);
        self.coeffs[i] = value;
    }

    /// Frequencies in storage order.
    pub fn modes(&self) -> impl Iterator<Item = FreqIndex> {
        modes(self.bandlimit)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `ℓ²` norm of the coefficients (equal to the `L²(𝕋³)` norm).
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ_ξ û(ξ)·conj(v̂(ξ))`, i.e. `∫ u v̄ dx`.
    pub fn inner(&self, other: &SpectralField) -> Complex64 {
        assert_eq!(self.bandlimit, other.bandlimit, "bandlimit mismatch");
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    /// Multiply each coefficient by a real symbol.
    pub fn map_multiplier(&self, mut symbol: impl FnMut(FreqIndex) -> f64) -> SpectralField {
        let mut out = self.clone();
        for (c, xi) in out.coeffs.iter_mut().zip(modes(self.bandlimit)) {
            *c *= symbol(xi);
        }
        out
    }

    /// Multiply each coefficient by a complex symbol.
    pub fn map_complex_multiplier(&self, mut symbol: impl FnMut(FreqIndex) -> Complex64) -> SpectralField {
        let mut out = self.clone();
        for (c, xi) in out.coeffs.iter_mut().zip(modes(self.bandlimit)) {
            *c *= symbol(xi);
        }
        out
    }

    /// Zero-pad or truncate to a new bandlimit.
    pub fn with_bandlimit(&self, bandlimit: usize) -> SpectralField {
        if bandlimit == self.bandlimit {
            return self.clone();
        }
        let mut out = SpectralField::zeros(self.metric, bandlimit);
        let m = bandlimit.min(self.bandlimit) as i64;
        for a in -m..=m {
            for b in -m..=m {
                for c in -m..=m {
                    let xi = FreqIndex([a, b, c]);
                    out.set(xi, self.get(xi));
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> SpectralField {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= factor);
        out
    }

    pub fn conj(&self) -> SpectralField {
        // conj(u)^(ξ) = conj(û(−ξ))
        SpectralField::from_fn(self.metric, self.bandlimit, |xi| {
            self.get(FreqIndex([-xi.0[0], -xi.0[1], -xi.0[2]])).conj()
        })
    }

    /// Largest coefficient-wise distance.
    pub fn max_abs_diff(&self, other: &SpectralField) -> f64 {
        assert_eq!(self.bandlimit, other.bandlimit, "bandlimit mismatch");
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> SpectralField {
        assert_eq!(self.bandlimit, other.bandlimit, "bandlimit mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect();
        SpectralField { metric: self.metric, bandlimit: self.bandlimit, coeffs }
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, o: &SpectralField) -> SpectralField {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, o: &SpectralField) -> SpectralField {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, k: f64) -> SpectralField {
        self.scale(Complex64::new(k, 0.0))
    }
}

/// Frequencies of `[−M, M]³` in storage order.
pub fn modes(bandlimit: usize) -> impl Iterator<Item = FreqIndex> {
    let m = bandlimit as i64;
    (-m..=m).flat_map(move |a| (-m..=m).flat_map(move |b| (-m..=m).map(move |c| FreqIndex([a, b, c]))))
}

/// Symbol of [`fractional_multiplier`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplierKind {
    /// `⟨ξ⟩^s = (1 + Q(ξ))^{s/2}`
    JapaneseBracket,
    /// `Q(ξ)^{s/2}`, zero mode annihilated
    Homogeneous,
}

/// Apply `⟨∇⟩^s` or `|∇|^s` (metric-weighted, without the `laplace_scale` factor).
pub fn fractional_multiplier(field: &SpectralField, s: f64, kind: MultiplierKind) -> Result<SpectralField> {
    match kind {
        MultiplierKind::JapaneseBracket => {
            let metric = field.metric;
            Ok(field.map_multiplier(|xi| metric.bracket(xi).powf(s)))
        }
        MultiplierKind::Homogeneous => {
            let zero = field.get(FreqIndex::ZERO);
            if s < 0.0 && (zero.re != 0.0 || zero.im != 0.0) {
                return Err(Error::NegativePowerAtZeroMode { s });
            }
            let metric = field.metric;
            Ok(field.map_multiplier(|xi| if xi == FreqIndex::ZERO { 0.0 } else { q_form(&metric, xi).powf(s / 2.0) }))
        }
    }
}

/// Samples on a uniform `n × n × n` grid, `x_j = j/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub metric: TorusMetric,
    pub n: usize,
    pub samples: Vec<Complex64>,
}

impl GridField {
    pub fn zeros(metric: TorusMetric, n: usize) -> Self {
        GridField { metric, n, samples: vec![Complex64::new(0.0, 0.0); n * n * n] }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> GridField {
        GridField { metric: self.metric, n: self.n, samples: self.samples.iter().map(|z| f(*z)).collect() }
    }

    pub fn zip_map(&self, other: &GridField, f: impl Fn(Complex64, Complex64) -> Complex64) -> GridField {
        assert_eq!(self.n, other.n, "grid size mismatch");
        GridField {
            metric: self.metric,
            n: self.n,
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// `∫_{𝕋³} u dx` by the rectangle rule.
    pub fn integral(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    /// `‖u‖_{L^p(𝕋³)}` by grid quadrature; `p = ∞` gives the sample maximum.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        }
        let mean = self.samples.iter().map(|z| z.norm().powf(p)).sum::<f64>() / self.samples.len() as f64;
        mean.powf(1.0 / p)
    }

    pub fn max_abs_diff(&self, other: &GridField) -> f64 {
        assert_eq!(self.n, other.n, "grid size mismatch");
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Grid points per axis used by `to_grid` for a given oversampling factor.
pub fn grid_size(bandlimit: usize, oversample: usize) -> usize {
    oversample.max(1) * lattice_side(bandlimit)
}

/// Evaluate on the grid of `oversample·(2M+1)` points per axis.
pub fn to_grid(field: &SpectralField, oversample: usize) -> GridField {
    to_grid_n(field, grid_size(field.bandlimit, oversample)).expect("oversampled grid always fits")
}

/// Evaluate `u(x_j) = Σ_ξ û(ξ) e^{2πiξ·j/n}` on an `n`-point grid.
pub fn to_grid_n(field: &SpectralField, n: usize) -> Result<GridField> {
    if n < lattice_side(field.bandlimit) {
        return Err(Error::GridTooSmall { n, bandlimit: field.bandlimit });
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n * n * n];
    for (c, xi) in field.coeffs.iter().zip(field.modes()) {
        let [a, b, d] = xi.0;
        data[(wrap(a, n) * n + wrap(b, n)) * n + wrap(d, n)] = *c;
    }
    fft3(&mut data, n, FftDirection::Inverse);
    Ok(GridField { metric: field.metric, n, samples: data })
}

/// Discrete Fourier coefficients of grid samples, truncated to bandlimit `M`.
pub fn to_spectral(grid: &GridField, bandlimit: usize) -> Result<SpectralField> {
    let n = grid.n;
    if n < lattice_side(bandlimit) {
        return Err(Error::GridTooSmall { n, bandlimit });
    }
    let mut data = grid.samples.clone();
    fft3(&mut data, n, FftDirection::Forward);
    let vol = (n * n * n) as f64;
    Ok(SpectralField::from_fn(grid.metric, bandlimit, |xi| {
        let [a, b, c] = xi.0;
        data[(wrap(a, n) * n + wrap(b, n)) * n + wrap(c, n)] / vol
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_field(m: usize, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SpectralField::random(TorusMetric::generic(), m, &mut rng, |_| 1.0)
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(&TorusMetric::square(), FreqIndex::new(1, 2, 2)), 9.0);
        assert_eq!(q_form(&TorusMetric::generic(), FreqIndex::ZERO), 0.0);
        let q = q_form(&TorusMetric::generic(), FreqIndex::new(1, 1, 1));
        assert!((q - 4.1462643699).abs() < 1e-10);
    }

    #[test]
    fn q_form_parallelogram_law() {
        let m = TorusMetric::generic();
        for (x, y) in [((1, -2, 3), (0, 4, -1)), ((5, 5, 5), (-2, 1, 0)), ((0, 0, 7), (3, 3, -3))] {
            let xi = FreqIndex::new(x.0, x.1, x.2);
            let eta = FreqIndex::new(y.0, y.1, y.2);
            let lhs = q_form(&m, xi + eta) + q_form(&m, xi - eta);
            let rhs = 2.0 * (q_form(&m, xi) + q_form(&m, eta));
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn invalid_metric_rejected() {
        assert!(TorusMetric::new([1.0, 0.0, 1.0], 1.0).is_err());
        assert!(TorusMetric::new([1.0, 1.0, 1.0], -1.0).is_err());
        assert!(TorusMetric::new([1.0, 1.0, 1.0], 2.0).is_ok());
    }

    #[test]
    fn fractional_multiplier_examples() {
        let u = random_field(3, 1);
        let same = fractional_multiplier(&u, 0.0, MultiplierKind::JapaneseBracket).unwrap();
        assert_eq!(same, u);

        let d = SpectralField::delta(TorusMetric::square(), 2, FreqIndex::new(1, 0, 0), Complex64::new(1.0, 0.0));
        let d2 = fractional_multiplier(&d, 2.0, MultiplierKind::JapaneseBracket).unwrap();
        assert!((d2.get(FreqIndex::new(1, 0, 0)) - Complex64::new(2.0, 0.0)).norm() < 1e-15);

        let there = fractional_multiplier(&u, 1.3, MultiplierKind::JapaneseBracket).unwrap();
        let back = fractional_multiplier(&there, -1.3, MultiplierKind::JapaneseBracket).unwrap();
        assert!(back.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn homogeneous_negative_power_needs_mean_zero() {
        let u = random_field(2, 2);
        assert!(matches!(
            fractional_multiplier(&u, -0.5, MultiplierKind::Homogeneous),
            Err(Error::NegativePowerAtZeroMode { .. })
        ));
        let mut v = u.clone();
        v.set(FreqIndex::ZERO, Complex64::new(0.0, 0.0));
        let w = fractional_multiplier(&v, -0.5, MultiplierKind::Homogeneous).unwrap();
        assert_eq!(w.get(FreqIndex::ZERO), Complex64::new(0.0, 0.0));
        // positive powers annihilate the mean silently
        let h = fractional_multiplier(&u, 1.0, MultiplierKind::Homogeneous).unwrap();
        assert_eq!(h.get(FreqIndex::ZERO), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_mode_is_constant_on_grid() {
        let d = SpectralField::delta(TorusMetric::generic(), 3, FreqIndex::ZERO, Complex64::new(1.0, 0.0));
        let g = to_grid(&d, 2);
        assert!(g.samples.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn round_trip_and_parseval() {
        for m in [0, 1, 4, 8] {
            let u = random_field(m, 10 + m as u64);
            for os in [1, 2, 3] {
                let g = to_grid(&u, os);
                let back = to_spectral(&g, m).unwrap();
                assert!(back.max_abs_diff(&u) < 1e-12, "m={m} os={os}");
                let grid_l2 = g.lp_norm(2.0);
                assert!((grid_l2 - u.l2_norm()).abs() <= 1e-10 * u.l2_norm().max(1e-300));
            }
        }
    }

    #[test]
    fn parseval_matches_direct_summation_at_small_bandlimit() {
        // Oracle: evaluate u(x) = Σ û e^{2πiξ·x} by direct summation.
        let u = random_field(2, 99);
        let n = 5;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = [i as f64 / n as f64, j as f64 / n as f64, k as f64 / n as f64];
                    let mut val = Complex64::new(0.0, 0.0);
                    for (c, xi) in u.coeffs.iter().zip(u.modes()) {
                        let ph = 2.0 * std::f64::consts::PI * (xi.0[0] as f64 * x[0] + xi.0[1] as f64 * x[1] + xi.0[2] as f64 * x[2]);
                        val += c * Complex64::from_polar(1.0, ph);
                    }
                    acc += val.norm_sqr();
                }
            }
        }
        let direct = (acc / (n * n * n) as f64).sqrt();
        assert!((direct - u.l2_norm()).abs() < 1e-10);
        assert!((to_grid_n(&u, n).unwrap().lp_norm(2.0) - direct).abs() < 1e-10);
    }

    #[test]
    fn grid_too_small() {
        let u = random_field(3, 5);
        assert_eq!(to_grid_n(&u, 6).unwrap_err(), Error::GridTooSmall { n: 6, bandlimit: 3 });
        let g = to_grid(&u, 1);
        assert!(matches!(to_spectral(&g, 4), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn conj_matches_pointwise_conjugate() {
        let u = random_field(2, 3);
        let a = to_grid(&u.conj(), 2);
        let b = to_grid(&u, 2).map(|z| z.conj());
        assert!(a.max_abs_diff(&b) < 1e-13);
    }

    #[test]
    fn from_coeffs_validates() {
        let m = TorusMetric::generic();
        assert!(matches!(
            SpectralField::from_coeffs(m, 1, vec![Complex64::new(0.0, 0.0); 26]),
            Err(Error::CoefficientCount { .. })
        ));
        let mut c = vec![Complex64::new(0.0, 0.0); 27];
        c[3] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(SpectralField::from_coeffs(m, 1, c), Err(Error::NonFinite(_))));
    }
}
