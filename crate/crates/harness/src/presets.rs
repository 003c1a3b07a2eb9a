//! Named experiments, one per estimate.

use torus_nls::lattice::TorusMetric;
use torus_nls::littlewood_paley::CutoffProfile;
use torus_nls::nonlinearity::s_critical;

use crate::error::{HarnessError, Result};
use crate::sampler::{SamplerKind, SamplerSpec, Support};
use crate::spec::{EstimateKind, EstimateSpec, TimeWindow, VerdictRule};

pub const DEFAULT_SEED: u64 = 0x7a11_5eed;

struct Draft {
    spec: EstimateSpec,
}

impl Draft {
    fn new(name: &str, family: &str, kind: EstimateKind, lhs: &str, rhs: &str) -> Self {
        Draft {
            spec: EstimateSpec {
                name: name.into(),
                family: family.into(),
                lhs: lhs.into(),
                rhs: rhs.into(),
                kind,
                predicted_exponent: 0.0,
                dyadic_range: vec![2, 4, 8],
                samplers: vec![],
                trials: 6,
                seed: DEFAULT_SEED,
                p: None,
                bandlimit: None,
                time: TimeWindow::dispersive(0.25, 8),
                metric: TorusMetric::generic(),
                oversample: 2,
                profile: CutoffProfile::Sharp,
                slack: 0.15,
                ratio_cap: 3.0,
                verdict: VerdictRule::Scaling,
            },
        }
    }

    fn pred(mut self, e: f64) -> Self {
        self.spec.predicted_exponent = e;
        self
    }

    fn range(mut self, r: &[u64]) -> Self {
        self.spec.dyadic_range = r.to_vec();
        self
    }

    fn samplers(mut self, s: Vec<SamplerSpec>) -> Self {
        self.spec.samplers = s;
        self
    }

    fn trials(mut self, t: usize) -> Self {
        self.spec.trials = t;
        self
    }

    fn p(mut self, p: f64) -> Self {
        self.spec.p = Some(p);
        self
    }

    fn bandlimit(mut self, m: usize) -> Self {
        self.spec.bandlimit = Some(m);
        self
    }

    fn time(mut self, t: TimeWindow) -> Self {
        self.spec.time = t;
        self
    }

    fn profile(mut self, p: CutoffProfile) -> Self {
        self.spec.profile = p;
        self
    }

    fn rule(mut self, v: VerdictRule) -> Self {
        self.spec.verdict = v;
        self
    }

    fn slack(mut self, s: f64) -> Self {
        self.spec.slack = s;
        self
    }

    fn done(self) -> EstimateSpec {
        self.spec
    }
}

fn s(kind: SamplerKind, support: Support) -> SamplerSpec {
    SamplerSpec::new(kind, support)
}

/// Gaussian, focused free flow and step atoms on the cube of side `N`.
fn strichartz_samplers() -> Vec<SamplerSpec> {
    vec![
        s(SamplerKind::GaussianShell, Support::Cube),
        s(SamplerKind::FreeFlow, Support::Cube).focused(),
        s(SamplerKind::StepAtom, Support::Cube),
    ]
}

/// Critical weights `⟨ξ⟩^{−s_c−3/2}` on `|ξ| ≤ N`.
fn critical(kind: SamplerKind, p: f64) -> SamplerSpec {
    s(kind, Support::Ball).with_decay(s_critical(p, 3) + 1.5)
}

fn cube_strichartz(name: &str, r: f64, range: &[u64], trials: usize) -> EstimateSpec {
    Draft::new(
        name,
        "strichartz_scaleinv",
        EstimateKind::CubeStrichartz { r },
        &format!("||P_C u||_L^{r}(t,x), C a cube of side N"),
        "||P_C u||_Y^0",
    )
    .pred(1.5 - 5.0 / r)
    .range(range)
    .samplers(strichartz_samplers())
    .trials(trials)
    .time(TimeWindow::dispersive(0.25, 16))
    .done()
}

fn contraction(name: &str, p: f64) -> EstimateSpec {
    Draft::new(
        name,
        "contraction",
        EstimateKind::Contraction { candidates: 2, amplitude_range: [0.1, 10.0] },
        "sup_v |<F(u+w) - F(u), v>| over sampled v with ||v||_Y^-s_c = 1",
        "||w||_Y^s_c (||u||_Y^s_c + ||w||_Y^s_c)^p",
    )
    .p(p)
    .range(&[8])
    .bandlimit(8)
    .time(TimeWindow::fixed(0.5, 64))
    // many active modes; see the ledger on low-mode dominated data
    .samplers(vec![s(SamplerKind::FreeFlow, Support::Full).with_decay(s_critical(p, 3) + 0.5)])
    .trials(100)
    .rule(VerdictRule::Homogeneity)
    .slack(0.1)
    .done()
}

/// Every preset, in a fixed order.
pub fn preset_registry() -> Vec<EstimateSpec> {
    let p3 = 3.0;
    vec![
        cube_strichartz("strichartz_L18_5", 3.6, &[2, 4, 8, 16, 32], 50),
        cube_strichartz("strichartz_L6", 6.0, &[2, 4, 8, 16, 32], 50),
        cube_strichartz("strichartz_L5p2", 2.5 * p3, &[2, 4, 8, 16], 20),
        Draft::new("bilinear", "bilinear", EstimateKind::Bilinear, "||u_N1 v_N2||_L2(t,x)", "||u_N1||_Y^0 ||v_N2||_Y^0")
            .pred(0.5)
            .range(&[1, 2, 4, 8])
            .samplers(vec![s(SamplerKind::GaussianShell, Support::Shell), s(SamplerKind::FreeFlow, Support::Shell).focused()])
            .trials(20)
            .time(TimeWindow::dispersive(0.25, 16))
            .rule(VerdictRule::Bilinear)
            .done(),
        Draft::new(
            "critical_strichartz",
            "critical_strichartz",
            EstimateKind::CriticalStrichartz { r: 2.5 * p3 },
            "||u_<=N||_L^(5p/2)(t,x)",
            "||u_<=N||_Y^s_c",
        )
        .p(p3)
        .samplers(vec![critical(SamplerKind::FreeFlow, p3).focused(), critical(SamplerKind::StepAtom, p3)])
        .done(),
        Draft::new(
            "critical_strichartz_super",
            "critical_strichartz",
            EstimateKind::CriticalStrichartz { r: 10.0 },
            "||u_<=N||_L^10(t,x)",
            "||u_<=N||_Y^s_c",
        )
        .p(p3)
        .pred(2.0 / p3 - 0.5)
        .samplers(vec![critical(SamplerKind::FreeFlow, p3).focused(), critical(SamplerKind::StepAtom, p3)])
        .done(),
        Draft::new(
            "gradient_l10p",
            "gradient_family",
            EstimateKind::Gradient { order: 1, r: 10.0 * p3 / (p3 + 4.0) },
            "||grad u_<=N||_L^(10p/(p+4))",
            "||u_<=N||_Y^s_c",
        )
        .p(p3)
        .pred(0.5)
        .samplers(vec![critical(SamplerKind::FreeFlow, p3).focused(), critical(SamplerKind::StepAtom, p3)])
        .done(),
        Draft::new(
            "gradient_l20p",
            "gradient_family",
            EstimateKind::Gradient { order: 1, r: 20.0 * p3 / (p3 + 8.0) },
            "||grad u_<=N||_L^(20p/(p+8))",
            "||u_<=N||_Y^s_c",
        )
        .p(p3)
        .pred(0.75)
        .samplers(vec![critical(SamplerKind::FreeFlow, p3).focused(), critical(SamplerKind::StepAtom, p3)])
        .done(),
        Draft::new(
            "laplacian_l10p",
            "gradient_family",
            EstimateKind::Gradient { order: 2, r: 10.0 * p3 / (p3 + 4.0) },
            "||Lap u_<=N||_L^(10p/(p+4))",
            "||u_<=N||_Y^s_c",
        )
        .p(p3)
        .pred(1.5)
        .samplers(vec![critical(SamplerKind::FreeFlow, p3).focused(), critical(SamplerKind::StepAtom, p3)])
        .done(),
        Draft::new(
            "frac_product",
            "frac_product",
            EstimateKind::FracProduct { s: 0.5 },
            "|||grad|^s (fg)||_L2",
            "|||grad|^s f||_L4 ||g||_L4 + ||f||_L4 |||grad|^s g||_L4",
        )
        .samplers(vec![s(SamplerKind::GaussianShell, Support::Ball)])
        .rule(VerdictRule::Boundedness)
        .done(),
        Draft::new(
            "frac_chain",
            "frac_chain",
            EstimateKind::FracChain { s: 0.5 },
            "|||grad|^s F(u)||_L2",
            "|||grad|^s u||_L4 |||u|^p||_L4",
        )
        .p(2.5)
        .samplers(vec![s(SamplerKind::GaussianShell, Support::Ball)])
        .rule(VerdictRule::Boundedness)
        .done(),
        Draft::new(
            "nonlinear_bernstein",
            "nonlinear_bernstein",
            EstimateKind::NonlinearBernstein { alpha: 0.5, q: 4.0 },
            "||P_N |u|^alpha||_L^(q/alpha)",
            "||grad u||_L^q^alpha",
        )
        .p(2.5)
        .pred(-0.5)
        .range(&[2, 4, 8, 16])
        .trials(20)
        .samplers(vec![s(SamplerKind::GaussianShell, Support::Shell)])
        .done(),
        Draft::new(
            "bony_convergence",
            "bony_convergence",
            EstimateKind::BonyConvergence { q: 1.2 },
            "||F(g) - F(g_<=N)||_L^q",
            "||g - g_<=N||_L^(3q/(3-2q)) (||g||_H^s_c^p + ||g_<=N||_H^s_c^p)",
        )
        .p(2.5)
        .range(&[1, 2, 4])
        .bandlimit(8)
        .profile(CutoffProfile::Smooth)
        .samplers(vec![s(SamplerKind::GaussianShell, Support::Full).with_decay(s_critical(2.5, 3) + 2.0)])
        .rule(VerdictRule::Boundedness)
        .done(),
        Draft::new(
            "cubic_main",
            "cubic_main",
            EstimateKind::CubicMain,
            "sum over N0 and N1>=N2>=N3 of |int v_N0 u_N1 u_N2 u_N3|",
            "||v||_Y^-1/2 ||u||_Y^1/2^3",
        )
        .p(2.0)
        .samplers(vec![critical(SamplerKind::StepAtom, 2.0)])
        .done(),
        contraction("contraction_p2", 2.0),
        contraction("contraction_p2_5", 2.5),
        contraction("contraction_p3", 3.0),
        contraction("contraction_p4", 4.0),
        Draft::new(
            "incomparable_reduced",
            "incomparable_reduced",
            EstimateKind::IncomparableReduced,
            "sum over N0>>N1 and N0<<N1 of |int v_N0 g_N1 D F(h_<=N1)|",
            "||v||_Y^-s_c ||w||_Y^s_c max(||g||, ||h||) ||h||^(p-1)",
        )
        .p(2.5)
        .samplers(vec![critical(SamplerKind::StepAtom, 2.5)])
        .done(),
        Draft::new(
            "comparable_p3",
            "comparable_p3",
            EstimateKind::ComparableP3,
            "sum over N0~N1>=N2>=N3 of |int v_N0 u1_N1 u2_N2 u3_N3 D F(h_<=N3)|",
            "||v||_Y^-s_c prod ||u_j||_Y^s_c max(||w||, ||h||) ||h||^(p-3)",
        )
        .p(3.5)
        .samplers(vec![critical(SamplerKind::StepAtom, 3.5)])
        .done(),
        Draft::new(
            "comparable_p23_low",
            "comparable_p23",
            EstimateKind::ComparableP23Low { eps: 0.01 },
            "sum over N0~N1>=N2>=N3 of |int v_N0 u_N1 u_N2 w_N3 P_<=N2 G(h_<=N2)|",
            "||v||_Y^-s_c ||u||_Y^s_c^2 ||w||_Y^s_c ||h||^(p-2)",
        )
        .p(2.5)
        .samplers(vec![critical(SamplerKind::StepAtom, 2.5)])
        .done(),
        Draft::new(
            "comparable_p23_high",
            "comparable_p23",
            EstimateKind::ComparableP23High { eps: 0.01 },
            "sum over N0~N1>=N2>=N3, N>N2 of |int v_N0 u_N1 u_N2 w_N3 P_N G(h_<=N2)|",
            "||v||_Y^-s_c ||u||_Y^s_c^2 ||w||_Y^s_c ||h||^(p-2)",
        )
        .p(2.5)
        .samplers(vec![critical(SamplerKind::StepAtom, 2.5)])
        .done(),
        Draft::new(
            "embedding_checks",
            "embedding_checks",
            EstimateKind::Embedding { s: 0.5 },
            "||u||_Y^s",
            "step-function U2 bound of the twisted modes",
        )
        .samplers(vec![s(SamplerKind::StepAtom, Support::Ball), s(SamplerKind::FreeFlow, Support::Ball)])
        .rule(VerdictRule::UpperBound { bound: 2.0 })
        .trials(10)
        .done(),
    ]
}

/// Presets whose name or family is `name`, in registry order.
pub fn lookup(name: &str) -> Result<Vec<EstimateSpec>> {
    let found: Vec<EstimateSpec> = preset_registry().into_iter().filter(|s| s.name == name || s.family == name).collect();
    if found.is_empty() {
        Err(HarnessError::NotFound(name.to_string()))
    } else {
        Ok(found)
    }
}

/// The preset shrunk to a quick run: at most `trials` trials and bandlimit ≤ 8.
pub fn smoke(spec: &EstimateSpec, trials: usize) -> EstimateSpec {
    let mut out = spec.clone();
    out.trials = out.trials.min(trials);
    out.dyadic_range.retain(|&n| spec.bandlimit_for(n) <= 8);
    out
}
