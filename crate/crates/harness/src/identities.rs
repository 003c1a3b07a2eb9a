//! Structural identities behind the multilinear estimates, with broken variants
//! used as negative controls.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torus_nls::lattice::{to_grid, FreqIndex, GridField, SpectralField, TorusMetric};
use torus_nls::littlewood_paley::{project_dyadic, project_leq, Cube, CubeDecomposition, CutoffProfile, DyadicIndex};
use torus_nls::paths::{SpaceTimePath, TimeGrid};

use crate::error::{HarnessError, Result};

/// Bandlimit of the cube-pairing check.
pub const CUBE_CHECK_BANDLIMIT: usize = 8;
/// Bandlimit of the vanishing check; large enough that the shell `N₀ = 32` is nonempty.
pub const VANISHING_BANDLIMIT: usize = 16;

fn unit(field: SpectralField) -> SpectralField {
    let n = field.l2_norm();
    if n == 0.0 {
        field
    } else {
        &field * (1.0 / n)
    }
}

fn dyadic(n: u64) -> Result<DyadicIndex> {
    Ok(DyadicIndex::new(n)?)
}

fn random_piece(metric: TorusMetric, m: usize, rng: &mut ChaCha8Rng, project: impl Fn(&SpectralField) -> SpectralField) -> SpectralField {
    unit(project(&SpectralField::random(metric, m, rng, |_| 1.0)))
}

/// `|∫v_{N₀}u_{N₁}g − Σ_{C_j∼C_k}∫(P_{C_j}v_{N₀})(P_{C_k}u_{N₁})g|` with `g = P_{≤2N₂}g`,
/// cubes of side `N₂` and `C_j ∼ C_k` iff the sum set lies within `radius` of the origin.
///
/// The left side is a grid quadrature, the right side a direct convolution sum
/// over frequency pairs.
pub fn cube_identity_discrepancy(n0: u64, n1: u64, n2: u64, seed: u64, radius: f64, zero_g: bool) -> Result<f64> {
    let m = CUBE_CHECK_BANDLIMIT;
    let metric = TorusMetric::generic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sharp = CutoffProfile::Sharp;
    let (d0, d1, d2) = (dyadic(n0)?, dyadic(n1)?, dyadic(2 * n2)?);
    let v = random_piece(metric, m, &mut rng, |f| project_dyadic(f, d0, sharp));
    let u = random_piece(metric, m, &mut rng, |f| project_dyadic(f, d1, sharp));
    let mut g = random_piece(metric, m, &mut rng, |f| project_leq(f, d2, sharp));
    if zero_g {
        g = SpectralField::zeros(metric, m);
    }

    let gv = to_grid(&v, 2);
    let gu = to_grid(&u, 2);
    let gg = to_grid(&g, 2);
    let direct = gv.zip_map(&gu, |a, b| a * b).zip_map(&gg, |a, b| a * b).integral();

    let decomp = CubeDecomposition::new(n2, m)?;
    let paired = paired_trilinear(&v, &u, &g, &decomp, radius);
    Ok((direct - paired).norm())
}

/// `Σ_{C_j∼C_k} Σ_{ξ₁∈C_j, ξ₂∈C_k} v̂(ξ₁)û(ξ₂)ĝ(−ξ₁−ξ₂)` over ordered related pairs.
pub fn paired_trilinear(v: &SpectralField, u: &SpectralField, g: &SpectralField, decomp: &CubeDecomposition, radius: f64) -> Complex64 {
    let support = |f: &SpectralField| -> Vec<(FreqIndex, Complex64, Cube)> {
        f.modes().zip(&f.coeffs).filter(|(_, c)| c.norm_sqr() > 0.0).map(|(xi, c)| (xi, *c, decomp.cube_of(xi))).collect()
    };
    let sv = support(v);
    let su = support(u);
    let mut paired = Complex64::new(0.0, 0.0);
    for (x1, c1, cube1) in &sv {
        for (x2, c2, cube2) in &su {
            let s = *x1 + *x2;
            let xi3 = FreqIndex::new(-s.0[0], -s.0[1], -s.0[2]);
            if g.contains(xi3) && cube1.sum_set_distance(cube2) <= radius {
                paired += c1 * c2 * g.get(xi3);
            }
        }
    }
    paired
}

/// Cube-pairing identity with the exact relation radius `2N₂`.
pub fn cube_identity_check(n0: u64, n1: u64, n2: u64, seed: u64) -> Result<f64> {
    if n2 > n1 || n0 > 4 * n1 || n1 > 4 * n0 {
        return Err(HarnessError::InvalidSpec(format!("need N0 ~ N1 >= N2, got ({n0}, {n1}, {n2})")));
    }
    cube_identity_discrepancy(n0, n1, n2, seed, 2.0 * n2 as f64, false)
}

/// `|∫∫v_{N₀}u_{N₁}u_{N₂}u_{N₃} dx dt|` for sharp shells of unit-normalised free flows.
pub fn vanishing_check(n0: u64, n1: u64, n2: u64, n3: u64, seed: u64) -> Result<f64> {
    let m = VANISHING_BANDLIMIT;
    let metric = TorusMetric::generic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = TimeGrid::new(0.1, 4)?;
    let mut paths = Vec::new();
    for n in [n0, n1, n2, n3] {
        let d = dyadic(n)?;
        let piece = random_piece(metric, m, &mut rng, |f| project_dyadic(f, d, CutoffProfile::Sharp));
        paths.push(SpaceTimePath::free_flow(grid, &piece));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..grid.n {
        let grids: Vec<GridField> = paths.iter().map(|p| to_grid(&p.frames[k], 2)).collect();
        let prod = grids[1..].iter().fold(grids[0].clone(), |acc, g| acc.zip_map(g, |a, b| a * b));
        total += prod.integral() * grid.dt();
    }
    Ok(total.norm())
}
