use serde::{Deserialize, Serialize};

use torus_nls::lattice::TorusMetric;
use torus_nls::littlewood_paley::CutoffProfile;
use torus_nls::nonlinearity::s_critical;
use torus_nls::paths::TimeGrid;

use crate::error::{HarnessError, Result};
use crate::sampler::SamplerSpec;

/// What is measured for each `(N, trial)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EstimateKind {
    /// `lhs ≡ 0` against `‖u‖_{Y⁰}`; exercises the degenerate path of the verdict.
    Null,
    /// `‖u‖_{L^r_{t,x}}` against `‖u‖_{Y⁰}` for data on a cube of side `N`.
    CubeStrichartz { r: f64 },
    /// `‖u_{N₁}v_{N₂}‖_{L²_{t,x}}` against `‖u_{N₁}‖_{Y⁰}‖v_{N₂}‖_{Y⁰}` for all `N₂ ≤ N₁`.
    Bilinear,
    /// `‖u_{≤N}‖_{L^r_{t,x}}` against `‖u_{≤N}‖_{Y^{s_c}}`.
    CriticalStrichartz { r: f64 },
    /// `‖∇u_{≤N}‖_{L^r}` (`order = 1`) or `‖Δu_{≤N}‖_{L^r}` (`order = 2`) against `‖u_{≤N}‖_{Y^{s_c}}`.
    Gradient { order: u32, r: f64 },
    /// `‖|∇|ˢ(fg)‖_{L²}` against `‖|∇|ˢf‖_{L⁴}‖g‖_{L⁴} + ‖f‖_{L⁴}‖|∇|ˢg‖_{L⁴}`.
    FracProduct { s: f64 },
    /// `‖|∇|ˢF(u)‖_{L²}` against `‖|∇|ˢu‖_{L⁴}‖|u|^p‖_{L⁴}`.
    FracChain { s: f64 },
    /// `‖P_N|u|^α‖_{L^{q/α}}` against `‖∇u‖^α_{L^q}`.
    NonlinearBernstein { alpha: f64, q: f64 },
    /// `‖F(g) − F(g_{≤N})‖_{L^q}` against `‖g − g_{≤N}‖_{L^{3q/(3−2q)}}(‖g‖^p_{H^{s_c}} + ‖g_{≤N}‖^p_{H^{s_c}})`,
    /// plus the telescoping identity as a check.
    BonyConvergence { q: f64 },
    /// Quadrilinear dyadic sum for the cubic equation, plus the cube-pairing identity as a check.
    CubicMain,
    /// `|∫∫(F(u+w) − F(u))v̄|` maximised over `candidates` test paths with `‖v‖_{Y^{−s_c}} = 1`,
    /// against `‖w‖_{Y^{s_c}}(‖u‖_{Y^{s_c}} + ‖w‖_{Y^{s_c}})^p`.
    Contraction { candidates: usize, amplitude_range: [f64; 2] },
    /// Separated-frequency sums with first- and second-derivative menus.
    IncomparableReduced,
    /// Comparable-frequency quadrilinear sum with third/fourth derivatives (`p ≥ 3`).
    ComparableP3,
    /// Comparable-frequency sum with `P_{≤N₂}` on the nonlinear factor (`2 < p < 3`).
    ComparableP23Low { eps: f64 },
    /// Comparable-frequency sum with `P_N`, `N > N₂`, on the nonlinear factor (`2 < p < 3`).
    ComparableP23High { eps: f64 },
    /// `‖u‖_{Yˢ}` against the step-function `U²` bound, and `sup_t‖u‖_{Hˢ} ≤ ‖u‖_{Yˢ}`.
    Embedding { s: f64 },
}

/// Pass/fail rule applied to the ratio table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum VerdictRule {
    /// Slope of the per-`N` maximum ≤ predicted + slack, and boundedness.
    Scaling,
    /// Boundedness of the per-`N` maximum after removing `N^{predicted}` only.
    Boundedness,
    /// Uniform in `N₁` for each `N₂`, slope in `N₂` ≤ predicted + slack.
    Bilinear,
    /// Max ≤ ratio_cap·median, and |slope of log ratio vs log amplitude| ≤ slack.
    Homogeneity,
    /// Every ratio ≤ bound.
    UpperBound { bound: f64 },
}

/// Time window `T = min(t_max, τ/N²)` sampled at `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub t_max: f64,
    /// Dispersive scaling constant; `None` keeps `T = t_max` for every `N`.
    pub tau: Option<f64>,
    pub n: usize,
}

impl TimeWindow {
    pub fn fixed(t: f64, n: usize) -> Self {
        TimeWindow { t_max: t, tau: None, n }
    }

    pub fn dispersive(tau: f64, n: usize) -> Self {
        TimeWindow { t_max: 1.0, tau: Some(tau), n }
    }

    pub fn grid(&self, scale: u64) -> Result<TimeGrid> {
        let t = match self.tau {
            Some(tau) => self.t_max.min(tau / (scale * scale) as f64),
            None => self.t_max,
        };
        Ok(TimeGrid::bounded(t, self.n)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateSpec {
    pub name: String,
    pub family: String,
    pub lhs: String,
    pub rhs: String,
    pub kind: EstimateKind,
    /// Power of `N` (of `N₂` for the bilinear rule) the ratio may grow like.
    pub predicted_exponent: f64,
    pub dyadic_range: Vec<u64>,
    pub samplers: Vec<SamplerSpec>,
    pub trials: usize,
    pub seed: u64,
    /// Nonlinearity power, when the estimate involves one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Fixed bandlimit; otherwise derived from `N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandlimit: Option<usize>,
    pub time: TimeWindow,
    pub metric: TorusMetric,
    pub oversample: usize,
    pub profile: CutoffProfile,
    pub slack: f64,
    pub ratio_cap: f64,
    pub verdict: VerdictRule,
}

impl EstimateSpec {
    pub fn s_c(&self) -> f64 {
        s_critical(self.p.unwrap_or(2.0), 3)
    }

    pub fn power(&self) -> f64 {
        self.p.unwrap_or(2.0)
    }

    /// Bandlimit used at scale `N`.
    pub fn bandlimit_for(&self, n: u64) -> usize {
        if let Some(m) = self.bandlimit {
            return m;
        }
        match self.kind {
            EstimateKind::CubeStrichartz { .. } => (n / 2).max(1) as usize,
            _ => n as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::InvalidSpec(format!("{}: {msg}", self.name)));
        if self.dyadic_range.is_empty() {
            return bad("empty dyadic range".into());
        }
        if self.dyadic_range.iter().any(|n| !n.is_power_of_two()) || self.dyadic_range.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("dyadic range {:?} must be ascending powers of two", self.dyadic_range));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.samplers.is_empty() {
            return bad("no sampler".into());
        }
        if self.oversample < 2 {
            return bad(format!("oversample {} < 2", self.oversample));
        }
        if !(self.slack >= 0.0 && self.ratio_cap >= 1.0) {
            return bad(format!("slack {} / ratio cap {} out of range", self.slack, self.ratio_cap));
        }
        if let Some(p) = self.p {
            if p < 2.0 {
                return bad(format!("p = {p} < 2"));
            }
        }
        let p = self.power();
        match &self.kind {
            EstimateKind::Gradient { order, .. } => {
                if !(p > 2.0) {
                    return bad("derivative Strichartz bounds do not hold for p = 2".into());
                }
                if !(1..=2).contains(order) {
                    return bad(format!("derivative order {order} not in {{1, 2}}"));
                }
            }
            EstimateKind::ComparableP3 if p < 3.0 => return bad(format!("needs p >= 3, got {p}")),
            EstimateKind::ComparableP23Low { .. } | EstimateKind::ComparableP23High { .. } if !(p > 2.0 && p < 3.0) => {
                return bad(format!("needs 2 < p < 3, got {p}"));
            }
            EstimateKind::IncomparableReduced if p <= 2.0 => {
                return bad("second-derivative menu needs p > 2".into());
            }
            EstimateKind::Contraction { candidates, amplitude_range } => {
                if *candidates == 0 || !(amplitude_range[0] > 0.0 && amplitude_range[0] <= amplitude_range[1]) {
                    return bad("contraction needs candidates >= 1 and 0 < a0 <= a1".into());
                }
            }
            EstimateKind::NonlinearBernstein { alpha, q } => {
                if !(*alpha > 0.0 && *alpha <= 1.0 && *q >= 1.0) {
                    return bad(format!("need 0 < alpha <= 1 and q >= 1, got ({alpha}, {q})"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}
