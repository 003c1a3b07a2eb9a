//! The power nonlinearity `F(z) = ±|z|^p z` and its paradifferential calculus.
//!
//! Writing `F = sign · z^{p/2+1} z̄^{p/2}`, every Wirtinger derivative has the
//! closed form
//!
//! ```text
//! ∂_z^a ∂_z̄^b F(z) = sign · (p/2+1)_a (p/2)_b · |z|^{p+1−a−b} (z/|z|)^{1−a+b}
//! ```
//!
//! with `(x)_k` the falling factorial, so `|∂^{(a,b)}F(z)| = C(p)|z|^{p+1−a−b}`
//! holds with equality.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{to_grid, to_spectral, GridField, SpectralField};
use crate::littlewood_paley::{project_dyadic, project_leq, project_leq_half, CutoffProfile, DyadicIndex};
use crate::quadrature::{graded_breakpoints, integrate_unit, segment_near_root, GaussLegendre};

/// Focusing/defocusing sign of `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Result<Sign> {
        if v == 1.0 {
            Ok(Sign::Plus)
        } else if v == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {v}")))
        }
    }
}

/// `F(z) = sign·|z|^p z`, `p ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerNonlinearity {
    pub p: f64,
    pub sign: Sign,
}

impl PowerNonlinearity {
    pub fn new(p: f64, sign: Sign) -> Result<Self> {
        if !(p.is_finite() && p >= 2.0) {
            return Err(Error::InvalidPower(p));
        }
        Ok(PowerNonlinearity { p, sign })
    }

    /// Scaling-critical regularity in three dimensions.
    pub fn s_c(&self) -> f64 {
        s_critical(self.p, 3)
    }

    #[inline]
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let r = z.norm();
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        z * (self.sign.value() * r.powf(self.p))
    }

    /// True when `p` is an even integer (polynomial nonlinearity).
    pub fn is_polynomial(&self) -> bool {
        self.p.fract() == 0.0 && (self.p as i64) % 2 == 0
    }

    /// Zero-padding factor: exact `⌈(p+2)/2⌉` for even integer `p`, else 4.
    pub fn dealias_oversample(&self) -> usize {
        if self.is_polynomial() {
            ((self.p + 2.0) / 2.0).ceil() as usize
        } else {
            4
        }
    }
}

/// `s_c = d/2 − 2/p`.
pub fn s_critical(p: f64, d: u32) -> f64 {
    d as f64 / 2.0 - 2.0 / p
}

/// `∂_z^a ∂_z̄^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WirtingerOrder {
    pub a: u32,
    pub b: u32,
}

impl WirtingerOrder {
    pub const F: WirtingerOrder = WirtingerOrder { a: 0, b: 0 };
    pub const DZ: WirtingerOrder = WirtingerOrder { a: 1, b: 0 };
    pub const DZBAR: WirtingerOrder = WirtingerOrder { a: 0, b: 1 };

    pub fn new(a: u32, b: u32) -> Self {
        WirtingerOrder { a, b }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b
    }

    /// All orders with `a + b = k`.
    pub fn of_total(k: u32) -> Vec<WirtingerOrder> {
        (0..=k).rev().map(|a| WirtingerOrder { a, b: k - a }).collect()
    }

    pub fn validate(&self, p: f64) -> Result<()> {
        let k = self.total();
        if k > 4 || (k as f64) > p + 1.0 {
            return Err(Error::UndefinedDerivative { a: self.a, b: self.b, p });
        }
        Ok(())
    }
}

fn falling(x: f64, k: u32) -> f64 {
    (0..k).map(|i| x - i as f64).product()
}

/// `C(p)` with `|∂^{(a,b)}F(z)| = C(p)|z|^{p+1−a−b}`.
pub fn wirtinger_constant(p: f64, order: WirtingerOrder) -> f64 {
    (falling(p / 2.0 + 1.0, order.a) * falling(p / 2.0, order.b)).abs()
}

/// Closed-form `∂_z^a ∂_z̄^b F(z)`.
pub fn wirtinger(z: Complex64, nl: &PowerNonlinearity, order: WirtingerOrder) -> Result<Complex64> {
    order.validate(nl.p)?;
    let c = nl.sign.value() * falling(nl.p / 2.0 + 1.0, order.a) * falling(nl.p / 2.0, order.b);
    let e = nl.p + 1.0 - order.total() as f64;
    let k = 1 - order.a as i32 + order.b as i32;
    let r = z.norm();
    if r == 0.0 {
        if e > 0.0 || c == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if k == 0 {
            return Ok(Complex64::new(c, 0.0));
        }
        return Err(Error::DomainError { a: order.a, b: order.b, p: nl.p });
    }
    Ok(unit_pow(z / r, k) * (c * r.powf(e)))
}

/// Hot-loop variant without validation; `z = 0` maps to the continuous extension or 0.
#[inline]
pub(crate) fn wirtinger_unchecked(z: Complex64, p: f64, sign: f64, order: WirtingerOrder) -> Complex64 {
    let c = sign * falling(p / 2.0 + 1.0, order.a) * falling(p / 2.0, order.b);
    let e = p + 1.0 - order.total() as f64;
    let k = 1 - order.a as i32 + order.b as i32;
    let r = z.norm();
    if r == 0.0 {
        return if e == 0.0 && k == 0 { Complex64::new(c, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    unit_pow(z / r, k) * (c * r.powf(e))
}

#[inline]
fn unit_pow(u: Complex64, k: i32) -> Complex64 {
    match k {
        0 => Complex64::new(1.0, 0.0),
        1 => u,
        -1 => u.conj(),
        k if k > 0 => u.powi(k),
        k => u.conj().powi(-k),
    }
}

/// `sign·|u|^p u` evaluated on a grid.
pub fn apply_f_grid(grid: &GridField, nl: &PowerNonlinearity) -> GridField {
    grid.map(|z| nl.eval(z))
}

/// `F(u)` by oversampled grid evaluation, truncated back to the field's bandlimit.
pub fn apply_f(field: &SpectralField, nl: &PowerNonlinearity, oversample: usize) -> Result<SpectralField> {
    if oversample < 2 {
        return Err(Error::GridTooSmall { n: oversample * field.side(), bandlimit: field.bandlimit });
    }
    let g = to_grid(field, oversample);
    to_spectral(&apply_f_grid(&g, nl), field.bandlimit)
}

/// `F(g_{≤1}) + Σ_{2≤M≤N} [F(g_{≤M}) − F(g_{≤M/2})]`.
pub fn bony_partial_sum(
    g: &SpectralField,
    n: DyadicIndex,
    nl: &PowerNonlinearity,
    oversample: usize,
    profile: CutoffProfile,
) -> Result<SpectralField> {
    let mut acc = apply_f(&project_leq(g, DyadicIndex::new(1)?, profile), nl, oversample)?;
    let mut prev = acc.clone();
    let mut m = 2;
    while m <= n.value() {
        let cur = apply_f(&project_leq(g, DyadicIndex::new(m)?, profile), nl, oversample)?;
        acc = &acc + &(&cur - &prev);
        prev = cur;
        m *= 2;
    }
    Ok(acc)
}

/// `‖F(g) − F(g_{≤N})‖_{L^q}` by grid quadrature, `1 ≤ q < 3/2`.
pub fn bony_tail(
    g: &SpectralField,
    n: DyadicIndex,
    nl: &PowerNonlinearity,
    q: f64,
    oversample: usize,
    profile: CutoffProfile,
) -> Result<f64> {
    if !(1.0..1.5).contains(&q) {
        return Err(Error::InvalidLebesgueExponent(q));
    }
    let full = to_grid(g, oversample);
    let low = to_grid(&project_leq(g, n, profile), oversample);
    let diff = full.zip_map(&low, |a, b| nl.eval(a) - nl.eval(b));
    Ok(diff.lp_norm(q))
}

/// Sobolev exponent `3q/(3 − 2q)` paired with `L^q` in the tail bound.
pub fn bony_tail_sobolev_exponent(q: f64) -> f64 {
    3.0 * q / (3.0 - 2.0 * q)
}

/// `∫₀¹ G(u + θw) dθ` for a single Wirtinger derivative `G`.
pub fn segment_integral(u: Complex64, w: Complex64, p: f64, sign: f64, order: WirtingerOrder, rule: &GaussLegendre) -> Complex64 {
    let roots: Vec<_> = segment_near_root(u, w).into_iter().collect();
    let bp = graded_breakpoints(&roots);
    integrate_unit(rule, &bp, |t| wirtinger_unchecked(u + w * t, p, sign, order))
}

/// `w∫₀¹∂_zF(u+θw)dθ + w̄∫₀¹∂_z̄F(u+θw)dθ`, which equals `F(u+w) − F(u)`.
pub fn ftc_linearize(u: Complex64, w: Complex64, nl: &PowerNonlinearity, k: usize) -> Result<Complex64> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 quadrature nodes, got {k}")));
    }
    if w == Complex64::new(0.0, 0.0) {
        return Ok(w);
    }
    let rule = GaussLegendre::new(k);
    Ok(ftc_with_rule(u, w, nl, &rule))
}

fn ftc_with_rule(u: Complex64, w: Complex64, nl: &PowerNonlinearity, rule: &GaussLegendre) -> Complex64 {
    let s = nl.sign.value();
    let roots: Vec<_> = segment_near_root(u, w).into_iter().collect();
    let bp = graded_breakpoints(&roots);
    let dz = integrate_unit(rule, &bp, |t| wirtinger_unchecked(u + w * t, nl.p, s, WirtingerOrder::DZ));
    let dzb = integrate_unit(rule, &bp, |t| wirtinger_unchecked(u + w * t, nl.p, s, WirtingerOrder::DZBAR));
    w * dz + w.conj() * dzb
}

/// Pointwise [`ftc_linearize`] on grids.
pub fn ftc_linearize_grid(u: &GridField, w: &GridField, nl: &PowerNonlinearity, k: usize) -> Result<GridField> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 quadrature nodes, got {k}")));
    }
    let rule = GaussLegendre::new(k);
    Ok(u.zip_map(w, |a, b| if b == Complex64::new(0.0, 0.0) { b } else { ftc_with_rule(a, b, nl, &rule) }))
}

/// The two terms `u_N∫∂_zF((P_{≤N/2}+θP_N)u)dθ` and `ū_N∫∂_z̄F((P_{≤N/2}+θP_N)u)dθ`
/// on the oversampled grid; their sum is `F(u_{≤N}) − F(u_{≤N/2})`.
pub fn lp_difference_linearize(
    u: &SpectralField,
    n: DyadicIndex,
    nl: &PowerNonlinearity,
    k: usize,
    profile: CutoffProfile,
    oversample: usize,
) -> Result<(GridField, GridField)> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 quadrature nodes, got {k}")));
    }
    let low = to_grid(&project_leq_half(u, n, profile), oversample);
    let shell = to_grid(&project_dyadic(u, n, profile), oversample);
    let rule = GaussLegendre::new(k);
    let s = nl.sign.value();
    let mut dz_term = GridField::zeros(u.metric, low.n);
    let mut dzb_term = GridField::zeros(u.metric, low.n);
    for (i, (a, b)) in low.samples.iter().zip(&shell.samples).enumerate() {
        if *b == Complex64::new(0.0, 0.0) {
            continue;
        }
        let roots: Vec<_> = segment_near_root(*a, *b).into_iter().collect();
        let bp = graded_breakpoints(&roots);
        let dz = integrate_unit(&rule, &bp, |t| wirtinger_unchecked(a + b * t, nl.p, s, WirtingerOrder::DZ));
        let dzb = integrate_unit(&rule, &bp, |t| wirtinger_unchecked(a + b * t, nl.p, s, WirtingerOrder::DZBAR));
        dz_term.samples[i] = b * dz;
        dzb_term.samples[i] = b.conj() * dzb;
    }
    Ok((dz_term, dzb_term))
}

/// Labels of the six terms returned by [`second_order_expansion`].
pub const SECOND_ORDER_LABELS: [&str; 6] = [
    "w_N*int dzF(h)",
    "conj(w_N)*int dzbarF(h)",
    "u_N*int W*dz^2F",
    "u_N*int conj(W)*dzbar dzF",
    "conj(u_N)*int W*dz dzbarF",
    "conj(u_N)*int conj(W)*dzbar^2F",
];

/// Pointwise six-term expansion. Inputs are `a_u = u_{≤N/2}`, `b_u = u_N`,
/// `a_w = w_{≤N/2}`, `b_w = w_N` at one point. With `g_θ = a_u + θb_u`,
/// `W_θ = a_w + θb_w` and `h_θ = g_θ + W_θ`, the terms are
///
/// ```text
/// b_w ∫ ∂_zF(h_θ),   b̄_w ∫ ∂_z̄F(h_θ),
/// b_u ∫∫ W_θ ∂_z²F(g_θ+ηW_θ),    b_u ∫∫ W̄_θ ∂_z̄∂_zF(g_θ+ηW_θ),
/// b̄_u ∫∫ W_θ ∂_z∂_z̄F(g_θ+ηW_θ),  b̄_u ∫∫ W̄_θ ∂_z̄²F(g_θ+ηW_θ)
/// ```
///
/// summing to `[F(h_1) − F(h_0)] − [F(g_1) − F(g_0)]`.
pub fn second_order_terms_pointwise(
    a_u: Complex64,
    b_u: Complex64,
    a_w: Complex64,
    b_w: Complex64,
    nl: &PowerNonlinearity,
    rule: &GaussLegendre,
) -> [Complex64; 6] {
    let zero = Complex64::new(0.0, 0.0);
    let p = nl.p;
    let s = nl.sign.value();
    let h0 = a_u + a_w;
    let hd = b_u + b_w;

    let mut out = [zero; 6];
    if b_w != zero || hd != zero {
        let roots: Vec<_> = segment_near_root(h0, hd).into_iter().collect();
        let bp = graded_breakpoints(&roots);
        if b_w != zero {
            out[0] = b_w * integrate_unit(rule, &bp, |t| wirtinger_unchecked(h0 + hd * t, p, s, WirtingerOrder::DZ));
            out[1] = b_w.conj()
                * integrate_unit(rule, &bp, |t| wirtinger_unchecked(h0 + hd * t, p, s, WirtingerOrder::DZBAR));
        }
    }
    if b_u == zero || (a_w == zero && b_w == zero) {
        return out;
    }

    // Outer θ-integrand is non-smooth where g_θ or h_θ passes near 0.
    let outer_roots: Vec<_> = segment_near_root(a_u, b_u).into_iter().chain(segment_near_root(h0, hd)).collect();
    let outer_bp = graded_breakpoints(&outer_roots);
    let orders = [WirtingerOrder::new(2, 0), WirtingerOrder::new(1, 1), WirtingerOrder::new(1, 1), WirtingerOrder::new(0, 2)];
    let mut acc = [zero; 4];
    for win in outer_bp.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let len = hi - lo;
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            let t = lo + len * x;
            let g = a_u + b_u * t;
            let wt_dir = a_w + b_w * t;
            let inner_roots: Vec<_> = segment_near_root(g, wt_dir).into_iter().collect();
            let inner_bp = graded_breakpoints(&inner_roots);
            let mut inner = [zero; 4];
            for (slot, ord) in inner.iter_mut().zip(orders.iter()).take(4) {
                *slot = integrate_unit(rule, &inner_bp, |e| wirtinger_unchecked(g + wt_dir * e, p, s, *ord));
            }
            let f = len * wt;
            acc[0] += wt_dir * inner[0] * f;
            acc[1] += wt_dir.conj() * inner[1] * f;
            acc[2] += wt_dir * inner[2] * f;
            acc[3] += wt_dir.conj() * inner[3] * f;
        }
    }
    out[2] = b_u * acc[0];
    out[3] = b_u * acc[1];
    out[4] = b_u.conj() * acc[2];
    out[5] = b_u.conj() * acc[3];
    out
}

/// The six labelled grid fields of the second-order expansion of
/// `[F(u_{≤N}+w_{≤N}) − F(u_{≤N/2}+w_{≤N/2})] − [F(u_{≤N}) − F(u_{≤N/2})]`.
#[derive(Debug, Clone)]
pub struct SecondOrderTerms {
    pub terms: Vec<GridField>,
}

impl SecondOrderTerms {
    pub fn total(&self) -> GridField {
        let mut acc = self.terms[0].clone();
        for t in &self.terms[1..] {
            acc = acc.zip_map(t, |a, b| a + b);
        }
        acc
    }

    pub fn by_label(&self, label: &str) -> Option<&GridField> {
        SECOND_ORDER_LABELS.iter().position(|l| *l == label).map(|i| &self.terms[i])
    }
}

pub fn second_order_expansion(
    u: &SpectralField,
    w: &SpectralField,
    n: DyadicIndex,
    nl: &PowerNonlinearity,
    k: usize,
    profile: CutoffProfile,
    oversample: usize,
) -> Result<SecondOrderTerms> {
    if nl.p <= 2.0 {
        return Err(Error::UndefinedDerivative { a: 2, b: 0, p: nl.p });
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 quadrature nodes, got {k}")));
    }
    let au = to_grid(&project_leq_half(u, n, profile), oversample);
    let bu = to_grid(&project_dyadic(u, n, profile), oversample);
    let aw = to_grid(&project_leq_half(w, n, profile), oversample);
    let bw = to_grid(&project_dyadic(w, n, profile), oversample);
    let rule = GaussLegendre::new(k);
    let mut terms: Vec<GridField> = (0..6).map(|_| GridField::zeros(u.metric, au.n)).collect();
    for i in 0..au.samples.len() {
        let t = second_order_terms_pointwise(au.samples[i], bu.samples[i], aw.samples[i], bw.samples[i], nl, &rule);
        for (j, v) in t.iter().enumerate() {
            terms[j].samples[i] = *v;
        }
    }
    Ok(SecondOrderTerms { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TorusMetric;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nl(p: f64) -> PowerNonlinearity {
        PowerNonlinearity::new(p, Sign::Plus).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Central-difference Wirtinger derivative of `f` on the (Re z, Im z) chart.
    fn fd(f: &dyn Fn(Complex64) -> Complex64, z: Complex64, bar: bool) -> Complex64 {
        let h = 1e-5;
        let dx = (f(z + h) - f(z - h)) / (2.0 * h);
        let dy = (f(z + c(0.0, h)) - f(z - c(0.0, h))) / (2.0 * h);
        let i = c(0.0, 1.0);
        if bar {
            (dx + i * dy) * 0.5
        } else {
            (dx - i * dy) * 0.5
        }
    }

    #[test]
    fn s_critical_values() {
        assert!((s_critical(2.0, 3) - 0.5).abs() < 1e-15);
        assert!((s_critical(4.0, 3) - 1.0).abs() < 1e-15);
        assert!(s_critical(4.0 / 3.0, 3).abs() < 1e-15);
    }

    #[test]
    fn first_derivatives_closed_form() {
        for p in [2.0, 2.5, 3.7] {
            let f = nl(p);
            for z in [c(0.3, -0.8), c(-1.2, 0.4), c(0.05, 0.0)] {
                let dz = wirtinger(z, &f, WirtingerOrder::DZ).unwrap();
                assert!((dz - c((p / 2.0 + 1.0) * z.norm().powf(p), 0.0)).norm() < 1e-12);
                let dzb = wirtinger(z, &f, WirtingerOrder::DZBAR).unwrap();
                let expect = z * z * (p / 2.0) * z.norm().powf(p - 2.0);
                assert!((dzb - expect).norm() < 1e-12);
                // finite-difference oracle
                let fz = |x: Complex64| f.eval(x);
                assert!((fd(&fz, z, false) - dz).norm() <= 1e-6 * dz.norm().max(1e-3));
                assert!((fd(&fz, z, true) - dzb).norm() <= 1e-6 * dzb.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn unit_circle_cubic_constant() {
        let f = nl(2.0);
        let z = Complex64::from_polar(1.0, 0.7);
        assert!((wirtinger(z, &f, WirtingerOrder::DZ).unwrap().norm() - 2.0).abs() < 1e-14);
        assert!((wirtinger(z, &f, WirtingerOrder::DZBAR).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!((wirtinger(z, &f, WirtingerOrder::new(2, 0)).unwrap().norm() - 2.0).abs() < 1e-14);
        assert!((wirtinger(z, &f, WirtingerOrder::new(2, 1)).unwrap().norm() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn vanishing_at_origin() {
        for p in [2.0, 2.5, 4.0] {
            let f = nl(p);
            assert_eq!(wirtinger(c(0.0, 0.0), &f, WirtingerOrder::F).unwrap(), c(0.0, 0.0));
            assert_eq!(wirtinger(c(0.0, 0.0), &f, WirtingerOrder::DZ).unwrap(), c(0.0, 0.0));
        }
        // cubic: ∂_z²∂_z̄ F = 2 everywhere, including 0
        assert_eq!(wirtinger(c(0.0, 0.0), &nl(2.0), WirtingerOrder::new(2, 1)).unwrap(), c(2.0, 0.0));
        assert_eq!(wirtinger(c(0.0, 0.0), &nl(2.0), WirtingerOrder::new(3, 0)).unwrap(), c(0.0, 0.0));
        // p = 3, fourth order: phase-dependent limit
        assert!(matches!(
            wirtinger(c(0.0, 0.0), &nl(3.0), WirtingerOrder::new(4, 0)),
            Err(Error::DomainError { .. })
        ));
    }

    #[test]
    fn disallowed_orders() {
        assert!(matches!(
            wirtinger(c(1.0, 0.0), &nl(2.5), WirtingerOrder::new(2, 2)),
            Err(Error::UndefinedDerivative { .. })
        ));
        assert!(wirtinger(c(1.0, 0.0), &nl(3.0), WirtingerOrder::new(2, 2)).is_ok());
        assert!(wirtinger(c(1.0, 0.0), &nl(5.0), WirtingerOrder::new(5, 0)).is_err());
        assert!(PowerNonlinearity::new(1.5, Sign::Plus).is_err());
    }

    #[test]
    fn pointwise_bound_is_equality() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2.0, 2.5, 3.0, 3.7, 4.0, 5.0] {
            let f = nl(p);
            for k in 0..=4u32 {
                for ord in WirtingerOrder::of_total(k) {
                    if ord.validate(p).is_err() {
                        continue;
                    }
                    for _ in 0..20 {
                        let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                        let v = wirtinger(z, &f, ord).unwrap();
                        let bound = wirtinger_constant(p, ord) * z.norm().powf(p + 1.0 - k as f64);
                        assert!((v.norm() - bound).abs() <= 1e-12 * bound.max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn apply_f_examples() {
        let m = TorusMetric::generic();
        let f = nl(2.5);
        let cst = SpectralField::delta(m, 3, crate::lattice::FreqIndex::ZERO, c(0.7, -0.2));
        let out = apply_f(&cst, &f, 2).unwrap();
        let expect = f.eval(c(0.7, -0.2));
        assert!((out.get(crate::lattice::FreqIndex::ZERO) - expect).norm() < 1e-14);
        assert!((out.l2_norm() - expect.norm()).abs() < 1e-13);

        assert!(apply_f(&SpectralField::zeros(m, 3), &f, 4).unwrap().is_zero());

        let xi = crate::lattice::FreqIndex::new(1, -2, 0);
        let mode = SpectralField::delta(m, 3, xi, c(1.0, 0.0));
        let cubed = apply_f(&mode, &nl(2.0), 2).unwrap();
        assert!((cubed.get(xi) - c(1.0, 0.0)).norm() < 1e-13);
        assert!((cubed.l2_norm() - 1.0).abs() < 1e-13);

        assert!(matches!(apply_f(&mode, &f, 1), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn dealias_factor() {
        assert_eq!(nl(2.0).dealias_oversample(), 2);
        assert_eq!(nl(4.0).dealias_oversample(), 3);
        assert_eq!(nl(2.5).dealias_oversample(), 4);
        assert_eq!(nl(3.0).dealias_oversample(), 4);
    }

    #[test]
    fn ftc_examples() {
        let f = nl(2.0);
        assert_eq!(ftc_linearize(c(0.4, 0.1), c(0.0, 0.0), &f, 4).unwrap(), c(0.0, 0.0));
        let v = ftc_linearize(c(1.0, 0.0), c(1.0, 0.0), &f, 16).unwrap();
        assert!((v - c(7.0, 0.0)).norm() < 1e-10);
        assert!(ftc_linearize(c(1.0, 0.0), c(1.0, 0.0), &f, 1).is_err());
    }

    #[test]
    fn ftc_matches_direct_difference_away_from_zero() {
        let f = nl(2.5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 200 {
            let u = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let w = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let (_, width) = segment_near_root(u, w).unwrap();
            if width * w.norm() < 0.1 {
                continue;
            }
            let lhs = ftc_linearize(u, w, &f, 16).unwrap();
            assert!((lhs - (f.eval(u + w) - f.eval(u))).norm() < 1e-8);
            checked += 1;
        }
    }

    #[test]
    fn ftc_through_exact_zero() {
        let f = nl(2.5);
        let u = c(-0.5, 0.0);
        let w = c(1.0, 0.0);
        let lhs = ftc_linearize(u, w, &f, 16).unwrap();
        assert!((lhs - (f.eval(u + w) - f.eval(u))).norm() < 1e-10);
    }

    #[test]
    fn doubling_nodes_shrinks_error() {
        // kink-free but curved integrand: error decreases with K
        let f = nl(3.7);
        let u = c(0.9, -0.3);
        let w = c(-0.4, 1.1);
        let exact = f.eval(u + w) - f.eval(u);
        let e2 = (ftc_linearize(u, w, &f, 2).unwrap() - exact).norm();
        let e4 = (ftc_linearize(u, w, &f, 4).unwrap() - exact).norm();
        assert!(e4 < e2);
    }

    #[test]
    fn second_order_needs_p_above_two() {
        let m = TorusMetric::generic();
        let u = SpectralField::zeros(m, 2);
        let n = DyadicIndex::new(2).unwrap();
        assert!(matches!(
            second_order_expansion(&u, &u, n, &nl(2.0), 8, CutoffProfile::Smooth, 2),
            Err(Error::UndefinedDerivative { .. })
        ));
    }

    #[test]
    fn second_order_pointwise_reconstruction() {
        let f = nl(2.5);
        let rule = GaussLegendre::new(12);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let mut r = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let (au, bu, aw, bw) = (r(), r(), r() * 0.3, r() * 0.3);
            let t = second_order_terms_pointwise(au, bu, aw, bw, &f, &rule);
            let total: Complex64 = t.iter().sum();
            let lhs = (f.eval(au + bu + aw + bw) - f.eval(au + aw)) - (f.eval(au + bu) - f.eval(au));
            assert!((total - lhs).norm() < 1e-7, "{}", (total - lhs).norm());
        }
    }
}
