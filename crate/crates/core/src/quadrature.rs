//! Gauss–Legendre rules and composite quadrature on `[0, 1]` with grading
//! towards near-zeros of a complex segment.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "need at least one node");
        let mut nodes = vec![0.0; k];
        let mut weights = vec![0.0; k];
        let kf = k as f64;
        for i in 0..(k + 1) / 2 {
            // Newton on P_k from the Chebyshev-like initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (kf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(k, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(k, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            nodes[k - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[k - 1 - i] = 0.5 * w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f`.
    pub fn integrate_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        let h = b - a;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(a + h * x) * *w;
        }
        acc * h
    }
}

fn legendre(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if k == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=k {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Parameter along `start + θ·dir`, `θ ∈ [0, 1]`, closest to the origin, and the
/// relative width `|start + θ*·dir| / |dir|` of the resulting feature.
pub fn segment_near_root(start: Complex64, dir: Complex64) -> Option<(f64, f64)> {
    let d2 = dir.norm_sqr();
    if d2 == 0.0 {
        return None;
    }
    let t = (-(start.conj() * dir).re / d2).clamp(0.0, 1.0);
    let dist = (start + dir * t).norm();
    Some((t, dist / d2.sqrt()))
}

/// Width below which a segment's closest approach is resolved by grading.
pub const GRADING_TRIGGER: f64 = 0.5;

const MIN_WIDTH: f64 = 1e-13;

/// Breakpoints in `[0, 1]` graded geometrically around each near-root.
pub fn graded_breakpoints(roots: &[(f64, f64)]) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0];
    for &(t, width) in roots {
        if width >= GRADING_TRIGGER {
            continue;
        }
        pts.push(t);
        let mut h = width.max(MIN_WIDTH);
        while h < 1.0 {
            if t - h > 0.0 {
                pts.push(t - h);
            }
            if t + h < 1.0 {
                pts.push(t + h);
            }
            h *= 2.0;
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    pts
}

/// Composite Gauss–Legendre over `[0, 1]` split at `breakpoints`.
pub fn integrate_unit(rule: &GaussLegendre, breakpoints: &[f64], mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for w in breakpoints.windows(2) {
        acc += rule.integrate_on(w[0], w[1], &mut f);
    }
    acc
}
