use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Least-squares line through `(log₂ N, log₂ value)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub value: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log₂ units.
    pub residual: f64,
}

pub fn fit_scaling_slope(series: &[(f64, f64)]) -> Result<SlopeFit> {
    if series.len() < 3 {
        return Err(HarnessError::DegenerateSeries(format!("need at least 3 points, got {}", series.len())));
    }
    let mut pts = Vec::with_capacity(series.len());
    for &(n, v) in series {
        if !(n > 0.0 && v > 0.0 && n.is_finite() && v.is_finite()) {
            return Err(HarnessError::DegenerateSeries(format!("non-positive point ({n}, {v})")));
        }
        pts.push((n.log2(), v.log2()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(HarnessError::DegenerateSeries("all abscissae coincide".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(SlopeFit { value: slope, intercept, residual: (rss / k).sqrt() })
}
