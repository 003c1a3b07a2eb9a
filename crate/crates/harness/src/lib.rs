//! Randomized scaling experiments for the multilinear and Strichartz-type
//! estimates behind the critical well-posedness theory of `torus_nls`.
//!
//! Each experiment draws random data, evaluates both sides of an inequality,
//! and judges the ratio table by its growth in the frequency scale. Passing is
//! a necessary condition for the inequality, never a proof of it.

pub mod error;
pub mod hoelder;
pub mod identities;
mod measure;
pub mod presets;
pub mod run;
pub mod sampler;
pub mod slope;
pub mod spec;

pub use error::{HarnessError, Result};
pub use measure::{CheckValue, Sample};
pub use presets::{lookup, preset_registry};
pub use run::{run_estimate, run_estimate_with, ExperimentReport, RunOptions, Verdict};
pub use spec::{EstimateKind, EstimateSpec, TimeWindow, VerdictRule};
