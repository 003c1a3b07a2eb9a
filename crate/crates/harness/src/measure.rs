//! Left- and right-hand sides of each estimate for one draw of data.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use torus_nls::lattice::{
    fractional_multiplier, to_grid, to_grid_n, to_spectral, GridField, MultiplierKind, SpectralField,
};
use torus_nls::littlewood_paley::{
    project_dyadic, project_leq, shells_for_bandlimit, CubeDecomposition, CutoffProfile, DyadicIndex,
};
use torus_nls::nonlinearity::{
    apply_f, bony_partial_sum, bony_tail, bony_tail_sobolev_exponent, wirtinger, PowerNonlinearity, Sign,
    WirtingerOrder,
};
use torus_nls::paths::{sobolev_norm, sup_sobolev, u2_upper_bound, xnorm_lower_bound, y_norm, SpaceTimePath, TimeGrid};

use crate::error::Result;
use crate::hoelder::hoelder_exponents;
use crate::identities::paired_trilinear;
use crate::sampler::{sample_field, sample_path, SampleContext, SamplerSpec};
use crate::spec::{EstimateKind, EstimateSpec};

/// One `(lhs, rhs)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(rename = "N2", default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// A side quantity that must stay below `threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckValue {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Measurement {
    pub samples: Vec<Sample>,
    pub checks: Vec<CheckValue>,
}

impl Measurement {
    fn single(lhs: f64, rhs: f64) -> Self {
        Measurement { samples: vec![Sample { n2: None, amplitude: None, lhs, rhs }], checks: vec![] }
    }

    fn check(mut self, name: &str, value: f64, threshold: f64) -> Self {
        self.checks.push(CheckValue { name: name.to_string(), value, threshold });
        self
    }
}

struct Ctx<'a> {
    spec: &'a EstimateSpec,
    sampler: &'a SamplerSpec,
    n: u64,
    m: usize,
    grid: TimeGrid,
    os: usize,
    profile: CutoffProfile,
}

impl Ctx<'_> {
    fn sample_ctx(&self, scale: u64) -> SampleContext {
        SampleContext { metric: self.spec.metric, bandlimit: self.m, grid: self.grid, scale, p: self.spec.power() }
    }

    fn path(&self, rng: &mut ChaCha8Rng) -> Result<SpaceTimePath> {
        sample_path(self.sampler, &self.sample_ctx(self.n), rng)
    }

    /// Path with the dual weight `⟨ξ⟩^{decay−3}`, for test functions in `Y^{−s}`.
    fn dual_path(&self, rng: &mut ChaCha8Rng) -> Result<SpaceTimePath> {
        let mut s = self.sampler.clone();
        s.decay = 3.0 - s.decay;
        sample_path(&s, &self.sample_ctx(self.n), rng)
    }

    fn field(&self, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
        sample_field(self.sampler, &self.sample_ctx(self.n), rng, self.sampler.amplitude)
    }

    fn nl(&self) -> Result<PowerNonlinearity> {
        Ok(PowerNonlinearity::new(self.spec.power(), Sign::Plus)?)
    }

    fn shells(&self) -> Vec<u64> {
        shells_for_bandlimit(self.m).iter().map(|d| d.value()).collect()
    }
}

fn dy(n: u64) -> DyadicIndex {
    DyadicIndex::new(n).expect("dyadic scale")
}

fn grids(path: &SpaceTimePath, os: usize) -> Vec<GridField> {
    path.frames.par_iter().map(|f| to_grid(f, os)).collect()
}

/// `(Σ_k Δt‖g_k‖^r_{L^r})^{1/r}`.
fn st_norm(grids: &[GridField], dt: f64, r: f64) -> f64 {
    grids.iter().map(|g| dt * g.lp_norm(r).powf(r)).sum::<f64>().powf(1.0 / r)
}

fn product(fs: &[&GridField]) -> GridField {
    fs[1..].iter().fold(fs[0].clone(), |acc, g| acc.zip_map(g, |a, b| a * b))
}

/// `|∇u|` on the grid, with `∂_j ↔ i(cθ_j)^{1/2}ξ_j`.
fn gradient_magnitude(f: &SpectralField, os: usize) -> GridField {
    let metric = f.metric;
    let comps: Vec<GridField> = (0..3)
        .map(|j| {
            let k = (metric.laplace_scale * metric.theta[j]).sqrt();
            to_grid(&f.map_complex_multiplier(|xi| Complex64::new(0.0, k * xi.0[j] as f64)), os)
        })
        .collect();
    let mut out = GridField::zeros(metric, comps[0].n);
    for (i, s) in out.samples.iter_mut().enumerate() {
        *s = Complex64::new(comps.iter().map(|c| c.samples[i].norm_sqr()).sum::<f64>().sqrt(), 0.0);
    }
    out
}

fn laplacian(f: &SpectralField) -> SpectralField {
    let metric = f.metric;
    f.map_multiplier(|xi| -metric.laplace_eigenvalue(xi))
}

fn deriv(h: &GridField, nl: &PowerNonlinearity, order: WirtingerOrder) -> GridField {
    // at an exact zero only the measure-zero value is ambiguous
    h.map(|z| wirtinger(z, nl, order).unwrap_or_default())
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// `N₀ ∼ N₁`: within a factor of two.
fn comparable(a: u64, b: u64) -> bool {
    a <= 2 * b && b <= 2 * a
}

pub(crate) fn measure(spec: &EstimateSpec, sampler: &SamplerSpec, n: u64, rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let m = spec.bandlimit_for(n);
    let ctx = Ctx { spec, sampler, n, m, grid: spec.time.grid(n)?, os: spec.oversample, profile: spec.profile };
    match &spec.kind {
        EstimateKind::Null => {
            let u = ctx.path(rng)?;
            Ok(Measurement::single(0.0, y_norm(&u, 0.0)))
        }
        EstimateKind::CubeStrichartz { r } | EstimateKind::CriticalStrichartz { r } => {
            let u = ctx.path(rng)?;
            let s = if matches!(spec.kind, EstimateKind::CubeStrichartz { .. }) { 0.0 } else { spec.s_c() };
            let lhs = st_norm(&grids(&u, ctx.os), ctx.grid.dt(), *r);
            Ok(Measurement::single(lhs, y_norm(&u, s)))
        }
        EstimateKind::Bilinear => bilinear(&ctx, rng),
        EstimateKind::Gradient { order, r } => {
            let u = ctx.path(rng)?;
            let g: Vec<GridField> = if *order == 1 {
                u.frames.par_iter().map(|f| gradient_magnitude(f, ctx.os)).collect()
            } else {
                u.frames.par_iter().map(|f| to_grid(&laplacian(f), ctx.os)).collect()
            };
            Ok(Measurement::single(st_norm(&g, ctx.grid.dt(), *r), y_norm(&u, spec.s_c())))
        }
        EstimateKind::FracProduct { s } => {
            let f = ctx.field(rng)?;
            let g = ctx.field(rng)?;
            let d = |x: &SpectralField| fractional_multiplier(x, *s, MultiplierKind::Homogeneous);
            let prod = to_grid(&f, 2).zip_map(&to_grid(&g, 2), |a, b| a * b);
            let lhs = d(&to_spectral(&prod, 2 * m)?)?.l2_norm();
            let l4 = |x: &SpectralField| to_grid(x, 2).lp_norm(4.0);
            let rhs = l4(&d(&f)?) * l4(&g) + l4(&f) * l4(&d(&g)?);
            Ok(Measurement::single(lhs, rhs))
        }
        EstimateKind::FracChain { s } => {
            let nl = ctx.nl()?;
            let u = ctx.field(rng)?;
            let gu = to_grid(&u, 4);
            let fu = to_spectral(&gu.map(|z| nl.eval(z)), 2 * m)?;
            let lhs = fractional_multiplier(&fu, *s, MultiplierKind::Homogeneous)?.l2_norm();
            let du = to_grid(&fractional_multiplier(&u, *s, MultiplierKind::Homogeneous)?, 4).lp_norm(4.0);
            let gp = gu.map(|z| Complex64::new(z.norm().powf(nl.p), 0.0)).lp_norm(4.0);
            Ok(Measurement::single(lhs, du * gp))
        }
        EstimateKind::NonlinearBernstein { alpha, q } => {
            let u = ctx.field(rng)?;
            let g = to_grid(&u, 4).map(|z| Complex64::new(z.norm().powf(*alpha), 0.0));
            let pn = project_dyadic(&to_spectral(&g, 2 * m)?, dy(n), ctx.profile);
            let lhs = to_grid(&pn, 2).lp_norm(q / alpha);
            let rhs = gradient_magnitude(&u, 2).lp_norm(*q).powf(*alpha);
            Ok(Measurement::single(lhs, rhs))
        }
        EstimateKind::BonyConvergence { q } => {
            let nl = ctx.nl()?;
            let g = ctx.field(rng)?;
            let low = project_leq(&g, dy(n), ctx.profile);
            let lhs = bony_tail(&g, dy(n), &nl, *q, ctx.os, ctx.profile)?;
            let r = bony_tail_sobolev_exponent(*q);
            let sc = spec.s_c();
            let rhs = to_grid(&(&g - &low), ctx.os).lp_norm(r)
                * (sobolev_norm(&g, sc).powf(nl.p) + sobolev_norm(&low, sc).powf(nl.p));
            let tele = bony_partial_sum(&g, dy(n), &nl, ctx.os, ctx.profile)?;
            let direct = apply_f(&low, &nl, ctx.os)?;
            let scale = direct.l2_norm().max(1.0);
            Ok(Measurement::single(lhs, rhs).check("telescoping", tele.max_abs_diff(&direct) / scale, 1e-10))
        }
        EstimateKind::CubicMain => cubic_main(&ctx, rng),
        EstimateKind::Contraction { candidates, amplitude_range } => {
            let nl = ctx.nl()?;
            let a = log_uniform(rng, amplitude_range[0], amplitude_range[1]);
            let rho = log_uniform(rng, 0.5, 2.0);
            let u = ctx.path(rng)?.scale(a);
            let w = ctx.path(rng)?.scale(a * rho);
            let frames = (0..ctx.grid.n)
                .into_par_iter()
                .map(|k| {
                    let gu = to_grid(&u.frames[k], ctx.os);
                    let gw = to_grid(&w.frames[k], ctx.os);
                    to_spectral(&gu.zip_map(&gw, |x, y| nl.eval(x + y) - nl.eval(x)), m)
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let diff = SpaceTimePath::new(ctx.grid, frames)?;
            let sc = spec.s_c();
            let lhs = xnorm_lower_bound(&diff, sc, *candidates, rng.random())?;
            let (yu, yw) = (y_norm(&u, sc), y_norm(&w, sc));
            let rhs = yw * (yu + yw).powf(nl.p);
            Ok(Measurement { samples: vec![Sample { n2: None, amplitude: Some(a), lhs, rhs }], checks: vec![] })
        }
        EstimateKind::IncomparableReduced => incomparable(&ctx, rng),
        EstimateKind::ComparableP3 => comparable_p3(&ctx, rng),
        EstimateKind::ComparableP23Low { eps } => comparable_p23(&ctx, rng, *eps, false),
        EstimateKind::ComparableP23High { eps } => comparable_p23(&ctx, rng, *eps, true),
        EstimateKind::Embedding { s } => {
            let u = ctx.path(rng)?;
            let y = y_norm(&u, *s);
            let metric = u.metric();
            let bound: f64 = u
                .frames[0]
                .modes()
                .map(|xi| metric.bracket(xi).powf(2.0 * s) * u2_upper_bound(&u.twisted_mode_path(xi)).powi(2))
                .sum::<f64>()
                .sqrt();
            let sup = if y > 0.0 { sup_sobolev(&u, *s) / y } else { 0.0 };
            Ok(Measurement::single(y, bound).check("sup_hs_over_y", sup, 1.0 + 1e-12))
        }
    }
}

fn bilinear(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let n1 = ctx.n;
    let u = sample_path(ctx.sampler, &ctx.sample_ctx(n1), rng)?;
    let gu = grids(&u, ctx.os);
    let yu = y_norm(&u, 0.0);
    let dt = ctx.grid.dt();
    let mut out = Measurement::default();
    let mut n2 = 1;
    while n2 <= n1 {
        let v = sample_path(ctx.sampler, &ctx.sample_ctx(n2), rng)?;
        let gv = grids(&v, ctx.os);
        let lhs = gu.iter().zip(&gv).map(|(a, b)| dt * a.zip_map(b, |x, y| x * y).lp_norm(2.0).powi(2)).sum::<f64>().sqrt();
        out.samples.push(Sample { n2: Some(n2), amplitude: None, lhs, rhs: yu * y_norm(&v, 0.0) });
        n2 *= 2;
    }
    Ok(out)
}

/// Shell grids `[P_{N_i} f(t_k)]` for each frame `k`.
fn shell_grids(path: &SpaceTimePath, shells: &[u64], profile: CutoffProfile, os: usize) -> Vec<Vec<GridField>> {
    path.frames
        .par_iter()
        .map(|f| shells.iter().map(|&n| to_grid(&project_dyadic(f, dy(n), profile), os)).collect())
        .collect()
}

fn low_grids(path: &SpaceTimePath, shells: &[u64], profile: CutoffProfile, os: usize) -> Vec<Vec<GridField>> {
    path.frames
        .par_iter()
        .map(|f| shells.iter().map(|&n| to_grid(&project_leq(f, dy(n), profile), os)).collect())
        .collect()
}

fn cubic_main(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let u = ctx.path(rng)?;
    let v = ctx.dual_path(rng)?;
    let shells = ctx.shells();
    let su = shell_grids(&u, &shells, ctx.profile, ctx.os);
    let sv = shell_grids(&v, &shells, ctx.profile, ctx.os);
    let k = shells.len();
    let dt = ctx.grid.dt();
    let mut acc = std::collections::BTreeMap::<(usize, usize, usize, usize), Complex64>::new();
    for f in 0..ctx.grid.n {
        for i1 in 0..k {
            for i2 in 0..=i1 {
                for i3 in 0..=i2 {
                    let t = product(&[&su[f][i1], &su[f][i2], &su[f][i3]]);
                    for i0 in 0..k {
                        let val = t.zip_map(&sv[f][i0], |a, b| a * b).integral() * dt;
                        *acc.entry((i0, i1, i2, i3)).or_default() += val;
                    }
                }
            }
        }
    }
    let lhs: f64 = acc.values().map(|c| c.norm()).sum();
    let rhs = y_norm(&v, -0.5) * y_norm(&u, 0.5).powi(3);
    let mut out = Measurement::single(lhs, rhs);

    // cube pairing on the first frame: N₀ = N₁ = top, N₂ = top/2, N₃ = top/4
    let top = 1u64 << (63 - (ctx.m as u64).leading_zeros());
    if top >= 2 {
        let (n2, n3) = (top / 2, (top / 4).max(1));
        let v0 = project_dyadic(&v.frames[0], dy(top), ctx.profile);
        let u1 = project_dyadic(&u.frames[0], dy(top), ctx.profile);
        let g = to_grid(&project_dyadic(&u.frames[0], dy(n2), ctx.profile), ctx.os)
            .zip_map(&to_grid(&project_dyadic(&u.frames[0], dy(n3), ctx.profile), ctx.os), |a, b| a * b);
        let direct = to_grid(&v0, ctx.os).zip_map(&to_grid(&u1, ctx.os), |a, b| a * b).zip_map(&g, |a, b| a * b).integral();
        let g_hat = to_spectral(&g, 2 * ctx.m)?;
        let decomp = CubeDecomposition::new(n2, ctx.m)?;
        let paired = paired_trilinear(&v0, &u1, &g_hat, &decomp, 2.0 * n2 as f64);
        let scale = v0.l2_norm() * u1.l2_norm() * g_hat.l2_norm();
        let disc = if scale > 0.0 { (direct - paired).norm() / scale } else { 0.0 };
        out = out.check("cube_pairing", disc, 1e-10);
    }
    Ok(out)
}

fn incomparable(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let nl = ctx.nl()?;
    let u = ctx.path(rng)?;
    let w = ctx.path(rng)?;
    let v = ctx.dual_path(rng)?;
    let h = SpaceTimePath::new(ctx.grid, u.frames.iter().zip(&w.frames).map(|(a, b)| a + b).collect())?;
    let shells = ctx.shells();
    let (sv, su, sw) = (
        shell_grids(&v, &shells, ctx.profile, ctx.os),
        shell_grids(&u, &shells, ctx.profile, ctx.os),
        shell_grids(&w, &shells, ctx.profile, ctx.os),
    );
    let (lh, lw) = (low_grids(&h, &shells, ctx.profile, ctx.os), low_grids(&w, &shells, ctx.profile, ctx.os));
    let k = shells.len();
    let dt = ctx.grid.dt();
    let separated = |i0: usize, i1: usize| shells[i0] >= 4 * shells[i1] || 4 * shells[i0] <= shells[i1];
    let mut acc = vec![Complex64::new(0.0, 0.0); 2 * k * k];
    for f in 0..ctx.grid.n {
        for i1 in 0..k {
            let d1 = deriv(&lh[f][i1], &nl, WirtingerOrder::DZ);
            let d2 = product(&[&lw[f][i1], &deriv(&lh[f][i1], &nl, WirtingerOrder::new(1, 1)), &su[f][i1]]);
            let d1 = d1.zip_map(&sw[f][i1], |a, b| a * b);
            for i0 in (0..k).filter(|&i0| separated(i0, i1)) {
                acc[2 * (i0 * k + i1)] += d1.zip_map(&sv[f][i0], |a, b| a * b).integral() * dt;
                acc[2 * (i0 * k + i1) + 1] += d2.zip_map(&sv[f][i0], |a, b| a * b).integral() * dt;
            }
        }
    }
    let lhs: f64 = acc.iter().map(|c| c.norm()).sum();
    let sc = ctx.spec.s_c();
    let (yu, yw, yh) = (y_norm(&u, sc), y_norm(&w, sc), y_norm(&h, sc));
    let rhs = y_norm(&v, -sc) * yw * yu.max(yw).max(yh) * yh.powf(nl.p - 1.0);
    Ok(Measurement::single(lhs, rhs))
}

fn comparable_p3(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Measurement> {
    let nl = ctx.nl()?;
    let u = ctx.path(rng)?;
    let w = ctx.path(rng)?;
    let v = ctx.dual_path(rng)?;
    let h = SpaceTimePath::new(ctx.grid, u.frames.iter().zip(&w.frames).map(|(a, b)| a + b).collect())?;
    let shells = ctx.shells();
    let (sv, su, sw) = (
        shell_grids(&v, &shells, ctx.profile, ctx.os),
        shell_grids(&u, &shells, ctx.profile, ctx.os),
        shell_grids(&w, &shells, ctx.profile, ctx.os),
    );
    let (lh, lw) = (low_grids(&h, &shells, ctx.profile, ctx.os), low_grids(&w, &shells, ctx.profile, ctx.os));
    let k = shells.len();
    let dt = ctx.grid.dt();
    let mut acc = std::collections::BTreeMap::<(usize, usize, usize, usize, u8), Complex64>::new();
    for f in 0..ctx.grid.n {
        for i3 in 0..k {
            // (w, u, u) with ∂_z³, and (u, u, u) with w_{≤N₃}∂_z⁴
            let d3 = deriv(&lh[f][i3], &nl, WirtingerOrder::new(3, 0));
            let d4 = lw[f][i3].zip_map(&deriv(&lh[f][i3], &nl, WirtingerOrder::new(4, 0)), |a, b| a * b);
            for i2 in i3..k {
                for i1 in i2..k {
                    let a = product(&[&sw[f][i1], &su[f][i2], &su[f][i3], &d3]);
                    let b = product(&[&su[f][i1], &su[f][i2], &su[f][i3], &d4]);
                    for i0 in (0..k).filter(|&i0| comparable(shells[i0], shells[i1])) {
                        *acc.entry((i0, i1, i2, i3, 0)).or_default() += a.zip_map(&sv[f][i0], |x, y| x * y).integral() * dt;
                        *acc.entry((i0, i1, i2, i3, 1)).or_default() += b.zip_map(&sv[f][i0], |x, y| x * y).integral() * dt;
                    }
                }
            }
        }
    }
    let lhs: f64 = acc.values().map(|c| c.norm()).sum();
    let sc = ctx.spec.s_c();
    let (yu, yw, yh) = (y_norm(&u, sc), y_norm(&w, sc), y_norm(&h, sc));
    let rhs = y_norm(&v, -sc) * yu.max(yw).powi(3) * yw.max(yh) * yh.powf(nl.p - 3.0);
    Ok(Measurement::single(lhs, rhs))
}

/// Low or high piece of the `2 < p < 3` comparable-frequency sum.
fn comparable_p23(ctx: &Ctx, rng: &mut ChaCha8Rng, eps: f64, high: bool) -> Result<Measurement> {
    let nl = ctx.nl()?;
    let u = ctx.path(rng)?;
    let w = ctx.path(rng)?;
    let v = ctx.dual_path(rng)?;
    let h = SpaceTimePath::new(ctx.grid, u.frames.iter().zip(&w.frames).map(|(a, b)| a + b).collect())?;
    let shells = ctx.shells();
    let (sv, su, sw) = (
        shell_grids(&v, &shells, ctx.profile, ctx.os),
        shell_grids(&u, &shells, ctx.profile, ctx.os),
        shell_grids(&w, &shells, ctx.profile, ctx.os),
    );
    let lh = low_grids(&h, &shells, ctx.profile, ctx.os);
    let k = shells.len();
    let dt = ctx.grid.dt();
    let n_grid = sv[0][0].n;
    let m2 = 2 * ctx.m;
    let out_shells: Vec<u64> = shells_for_bandlimit(m2).iter().map(|d| d.value()).collect();
    let mut acc = std::collections::BTreeMap::<(usize, usize, usize, usize, u64), Complex64>::new();
    for f in 0..ctx.grid.n {
        for i2 in 0..k {
            let g_hat = to_spectral(&deriv(&lh[f][i2], &nl, WirtingerOrder::new(3, 0)), m2)?;
            // the output projections applied to G(h_{≤N₂})
            let pieces: Vec<(u64, GridField)> = match high {
                false => vec![(shells[i2], to_grid_n(&project_leq(&g_hat, dy(shells[i2]), ctx.profile), n_grid)?)],
                true => out_shells
                    .iter()
                    .filter(|&&nn| nn > shells[i2])
                    .map(|&nn| Ok((nn, to_grid_n(&project_dyadic(&g_hat, dy(nn), ctx.profile), n_grid)?)))
                    .collect::<Result<Vec<_>>>()?,
            };
            for i3 in 0..=i2 {
                for i1 in i2..k {
                    let base = product(&[&su[f][i1], &su[f][i2], &sw[f][i3]]);
                    for i0 in (0..k).filter(|&i0| comparable(shells[i0], shells[i1])) {
                        let b0 = base.zip_map(&sv[f][i0], |x, y| x * y);
                        for (nn, piece) in &pieces {
                            *acc.entry((i0, i1, i2, i3, *nn)).or_default() += b0.zip_map(piece, |x, y| x * y).integral() * dt;
                        }
                    }
                }
            }
        }
    }
    let lhs: f64 = acc.values().map(|c| c.norm()).sum();
    let sc = ctx.spec.s_c();
    let (yu, yw, yh) = (y_norm(&u, sc), y_norm(&w, sc), y_norm(&h, sc));
    let rhs = y_norm(&v, -sc) * yu * yu * yw * yh.powf(nl.p - 2.0);
    let hs = hoelder_exponents(nl.p, eps)?;
    let sum = if high { hs.high_sum() } else { hs.low_sum() };
    Ok(Measurement::single(lhs, rhs).check("hoelder_sum", (sum - 1.0).abs(), 1e-12))
}
