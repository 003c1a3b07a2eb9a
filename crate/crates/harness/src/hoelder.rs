//! Lebesgue exponents for the comparable-frequency estimate with `2 < p < 3`.

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Smallest exponent for which the cube Strichartz estimate is available.
pub const STRICHARTZ_ENDPOINT: f64 = 10.0 / 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoelderExponentSet {
    pub p: f64,
    pub eps: f64,
    /// `(r₀, r₁)` for the low-frequency piece.
    pub low: [f64; 2],
    /// `(r₀, …, r₄)` for the high-frequency piece; the last factor is measured in `L^{r₄/(p−2)}`.
    pub high: [f64; 5],
}

impl HoelderExponentSet {
    /// `3/r₀ + 1/r₁`.
    pub fn low_sum(&self) -> f64 {
        3.0 / self.low[0] + 1.0 / self.low[1]
    }

    /// `Σⱼ 1/rⱼ` over the five high-frequency exponents.
    pub fn high_sum(&self) -> f64 {
        self.high.iter().map(|r| 1.0 / r).sum()
    }

    /// `1/r₀ + 1/r₁ + 1/r₂ + 1/r₃ + (p−2)/r₄`, the reciprocal sum of the Lebesgue
    /// exponents actually paired in the high-frequency Hölder step.
    pub fn high_weighted_sum(&self) -> f64 {
        let h = &self.high;
        1.0 / h[0] + 1.0 / h[1] + 1.0 / h[2] + 1.0 / h[3] + (self.p - 2.0) / h[4]
    }
}

fn raw(p: f64, eps: f64) -> ([f64; 2], [f64; 5]) {
    let low = [15.0 * p / (5.0 * p - 2.0 * (1.0 - eps)), 5.0 * p / (2.0 * (1.0 - eps))];
    let r01 = 20.0 * p / ((1.0 - eps) * p * p + (1.0 + 5.0 * eps) * p + 4.0 * eps);
    let r2 = 10.0 * p / (2.0 * p * p - 4.0 - 3.0 * (1.0 - eps / 3.0) * p * (p - 2.0));
    let r3 = 5.0 * p / (2.0 * (1.0 - eps));
    let r4 = 10.0 / (3.0 * (1.0 - eps));
    (low, [r01, r01, r2, r3, r4])
}

/// The first violated constraint, if any.
fn violation(p: f64, eps: f64) -> Option<(String, f64)> {
    if !(eps < 1.0) {
        return Some(("1 - eps".into(), 1.0 - eps));
    }
    let (low, high) = raw(p, eps);
    let named = [
        ("low r0", low[0]),
        ("low r1", low[1]),
        ("high r0", high[0]),
        ("high r1", high[1]),
        ("high r2", high[2]),
        ("high r3", high[3]),
        ("high r4", high[4]),
    ];
    for (name, r) in named {
        if !(r.is_finite() && r > STRICHARTZ_ENDPOINT) {
            return Some((name.to_string(), r));
        }
    }
    if !(low[1] > 2.5 * p) {
        return Some(("low r1 - 5p/2".into(), low[1] - 2.5 * p));
    }
    None
}

pub fn hoelder_exponents(p: f64, eps: f64) -> Result<HoelderExponentSet> {
    if !(p > 2.0 && p < 3.0) {
        return Err(HarnessError::InvalidSpec(format!("exponent set needs 2 < p < 3, got {p}")));
    }
    if !(eps > 0.0) {
        return Err(HarnessError::InvalidSpec(format!("eps must be positive, got {eps}")));
    }
    if let Some((constraint, value)) = violation(p, eps) {
        return Err(HarnessError::EpsilonTooLarge { eps, constraint, value });
    }
    let (low, high) = raw(p, eps);
    Ok(HoelderExponentSet { p, eps, low, high })
}

/// Supremum of admissible `ε` for `p`, by bisection on `[lo, hi]` to `tol`.
pub fn epsilon_max_in(p: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    debug_assert!(violation(p, lo).is_none() && violation(p, hi).is_some());
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if violation(p, mid).is_none() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn epsilon_max(p: f64) -> f64 {
    epsilon_max_in(p, 1e-9, 1.0, 1e-13)
}
