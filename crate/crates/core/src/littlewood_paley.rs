//! Dyadic cutoffs, Littlewood–Paley projections and cube tilings of frequency space.
//!
//! `|ξ|` is always the Euclidean length of the integer vector; the metric
//! plays no role in the cutoffs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FreqIndex, SpectralField};

/// Shape of the base cutoff `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffProfile {
    /// `φ = 1` on `|x| ≤ 1`, `0` on `|x| ≥ 2`, `C^∞` glue in between.
    Smooth,
    /// Indicator of `|x| ≤ 1`.
    Sharp,
}

impl CutoffProfile {
    pub fn name(&self) -> &'static str {
        match self {
            CutoffProfile::Smooth => "smooth",
            CutoffProfile::Sharp => "sharp",
        }
    }
}

impl std::str::FromStr for CutoffProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(CutoffProfile::Smooth),
            "sharp" => Ok(CutoffProfile::Sharp),
            other => Err(Error::InvalidArgument(format!("unknown cutoff profile '{other}'"))),
        }
    }
}

/// A dyadic frequency scale `N ∈ {1, 2, 4, …}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyadicIndex(u64);

impl DyadicIndex {
    pub fn new(n: u64) -> Result<Self> {
        if n >= 1 && n.is_power_of_two() {
            Ok(DyadicIndex(n))
        } else {
            Err(Error::NotDyadic(n))
        }
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        self.0 as f64
    }

    /// `1, 2, 4, …` up to and including `max` (rounded down to a power of two).
    pub fn up_to(max: u64) -> Vec<DyadicIndex> {
        let mut out = Vec::new();
        let mut n = 1u64;
        while n <= max {
            out.push(DyadicIndex(n));
            n *= 2;
        }
        out
    }
}

/// Smallest power of two `N` with `N ≥ 2·bandlimit` (and at least 1).
pub fn saturating_scale(bandlimit: usize) -> u64 {
    (2 * bandlimit as u64).max(1).next_power_of_two()
}

/// Dyadic scales whose sharp shells can meet `[−M, M]³`.
pub fn shells_for_bandlimit(bandlimit: usize) -> Vec<DyadicIndex> {
    let rmax = (3.0f64).sqrt() * bandlimit as f64;
    let mut out = vec![DyadicIndex(1)];
    let mut n = 2u64;
    while (n as f64) / 2.0 < rmax {
        out.push(DyadicIndex(n));
        n *= 2;
    }
    out
}

fn glue(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// The radial profile `φ(r)`.
pub fn phi_profile(profile: CutoffProfile, r: f64) -> f64 {
    match profile {
        CutoffProfile::Sharp => {
            if r <= 1.0 {
                1.0
            } else {
                0.0
            }
        }
        CutoffProfile::Smooth => {
            if r <= 1.0 {
                1.0
            } else if r >= 2.0 {
                0.0
            } else {
                let a = glue(2.0 - r);
                a / (a + glue(r - 1.0))
            }
        }
    }
}

/// `φ_N(ξ) = φ(|ξ|/N)`; `N = 0` encodes the empty projection `P_{≤1/2} = 0`.
pub fn phi_weight(profile: CutoffProfile, n: f64, xi: FreqIndex) -> f64 {
    if n < 1.0 {
        return 0.0;
    }
    match profile {
        // exact integer comparison avoids rounding at shell boundaries
        CutoffProfile::Sharp => {
            if (xi.norm_sq() as f64) <= n * n {
                1.0
            } else {
                0.0
            }
        }
        CutoffProfile::Smooth => phi_profile(profile, xi.norm() / n),
    }
}

/// `ψ_N = φ_N − φ_{N/2}`, with `ψ₁ = φ`.
pub fn psi_weight(profile: CutoffProfile, n: DyadicIndex, xi: FreqIndex) -> f64 {
    let nn = n.as_f64();
    if n.0 == 1 {
        phi_weight(profile, 1.0, xi)
    } else {
        phi_weight(profile, nn, xi) - phi_weight(profile, nn / 2.0, xi)
    }
}

/// `P_N u`.
pub fn project_dyadic(field: &SpectralField, n: DyadicIndex, profile: CutoffProfile) -> SpectralField {
    field.map_multiplier(|xi| psi_weight(profile, n, xi))
}

/// `P_{≤N} u`.
pub fn project_leq(field: &SpectralField, n: DyadicIndex, profile: CutoffProfile) -> SpectralField {
    field.map_multiplier(|xi| phi_weight(profile, n.as_f64(), xi))
}

/// `P_{≤N/2} u`, zero for `N = 1`.
pub fn project_leq_half(field: &SpectralField, n: DyadicIndex, profile: CutoffProfile) -> SpectralField {
    field.map_multiplier(|xi| if n.0 == 1 { 0.0 } else { phi_weight(profile, n.as_f64() / 2.0, xi) })
}

/// `(P_{≤N/2} + θ P_N) u`.
pub fn blended_projection(field: &SpectralField, n: DyadicIndex, theta: f64, profile: CutoffProfile) -> Result<SpectralField> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidArgument(format!("blend parameter {theta} outside [0, 1]")));
    }
    Ok(field.map_multiplier(|xi| {
        let low = if n.0 == 1 { 0.0 } else { phi_weight(profile, n.as_f64() / 2.0, xi) };
        low + theta * psi_weight(profile, n, xi)
    }))
}

/// Integer-aligned cube `lo + [0, side)³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cube {
    pub lo: [i64; 3],
    pub side: i64,
}

impl Cube {
    pub fn contains(&self, xi: FreqIndex) -> bool {
        (0..3).all(|i| xi.0[i] >= self.lo[i] && xi.0[i] < self.lo[i] + self.side)
    }

    /// Euclidean distance from the origin to the lattice sum set `C + C'`.
    pub fn sum_set_distance(&self, other: &Cube) -> f64 {
        let mut d2 = 0.0;
        for i in 0..3 {
            let a = self.lo[i] + other.lo[i];
            let b = a + self.side + other.side - 2;
            let gap = if a > 0 {
                a
            } else if b < 0 {
                -b
            } else {
                0
            };
            d2 += (gap * gap) as f64;
        }
        d2.sqrt()
    }
}

/// Tiling of `[−M, M]³` by cubes `offset + side·k + [0, side)³`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeDecomposition {
    pub side: u64,
    pub anchor_offsets: [i64; 3],
    pub bandlimit: usize,
    #[serde(skip)]
    cubes: Vec<Cube>,
}

impl CubeDecomposition {
    pub fn new(side: u64, bandlimit: usize) -> Result<Self> {
        Self::with_offset(side, bandlimit, [0; 3])
    }

    /// Cubes anchored at `offset + side·ℤ`; ties at shared faces go to the upper cube.
    pub fn with_offset(side: u64, bandlimit: usize, anchor_offsets: [i64; 3]) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidArgument("cube side must be positive".into()));
        }
        let s = side as i64;
        let m = bandlimit as i64;
        let ranges: Vec<Vec<i64>> = (0..3)
            .map(|i| {
                let k0 = (-m - anchor_offsets[i]).div_euclid(s);
                let k1 = (m - anchor_offsets[i]).div_euclid(s);
                (k0..=k1).map(|k| anchor_offsets[i] + k * s).collect()
            })
            .collect();
        let mut cubes = Vec::new();
        for &a in &ranges[0] {
            for &b in &ranges[1] {
                for &c in &ranges[2] {
                    cubes.push(Cube { lo: [a, b, c], side: s });
                }
            }
        }
        Ok(CubeDecomposition { side, anchor_offsets, bandlimit, cubes })
    }

    /// Decomposition with one cube `[−side/2, side/2)³` centred at the origin.
    pub fn centered(side: u64, bandlimit: usize) -> Result<Self> {
        let half = (side / 2) as i64;
        Self::with_offset(side, bandlimit, [-half; 3])
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Cube containing `ξ`.
    pub fn cube_of(&self, xi: FreqIndex) -> Cube {
        let s = self.side as i64;
        let mut lo = [0; 3];
        for i in 0..3 {
            lo[i] = self.anchor_offsets[i] + (xi.0[i] - self.anchor_offsets[i]).div_euclid(s) * s;
        }
        Cube { lo, side: s }
    }

    /// The cube containing the origin.
    pub fn origin_cube(&self) -> Cube {
        self.cube_of(FreqIndex::ZERO)
    }
}

/// Sharp restriction `P_C u`.
pub fn project_cube(field: &SpectralField, cube: &Cube) -> SpectralField {
    field.map_multiplier(|xi| if cube.contains(xi) { 1.0 } else { 0.0 })
}

/// Unordered pairs `(j, k)`, `j ≤ k`, of cube indices whose sum set meets `{|ξ| ≤ R}`.
pub fn related_cube_pairs(decomp: &CubeDecomposition, radius: f64) -> Vec<(usize, usize)> {
    let cubes = decomp.cubes();
    let mut out = Vec::new();
    for j in 0..cubes.len() {
        for k in j..cubes.len() {
            if cubes[j].sum_set_distance(&cubes[k]) <= radius {
                out.push((j, k));
            }
        }
    }
    out
}

/// Partner count of every cube under [`related_cube_pairs`].
pub fn partner_counts(decomp: &CubeDecomposition, radius: f64) -> Vec<usize> {
    let mut counts = vec![0; decomp.cubes().len()];
    for (j, k) in related_cube_pairs(decomp, radius) {
        counts[j] += 1;
        if j != k {
            counts[k] += 1;
        }
    }
    counts
}
