//! `.field.json` persistence.
//!
//! ```json
//! {"metric": {"theta": [..], "laplace_scale": ..}, "bandlimit": M, "coeffs": [[re, im], ..]}
//! ```
//!
//! Coefficients are row-major over `ξ₁, ξ₂, ξ₃ ∈ [−M, M]`. Floats are written in
//! shortest round-trip form, so save/load is bit-exact.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{SpectralField, TorusMetric};

#[derive(Serialize, Deserialize)]
struct FieldFile {
    metric: TorusMetric,
    bandlimit: usize,
    coeffs: Vec<[f64; 2]>,
}

pub fn field_to_json(field: &SpectralField) -> String {
    let file = FieldFile {
        metric: field.metric,
        bandlimit: field.bandlimit,
        coeffs: field.coeffs.iter().map(|c| [c.re, c.im]).collect(),
    };
    serde_json::to_string(&file).expect("field serialisation is infallible")
}

pub fn field_from_json(text: &str) -> Result<SpectralField> {
    let file: FieldFile = serde_json::from_str(text).map_err(|e| Error::FieldFormat(e.to_string()))?;
    let coeffs = file.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
    SpectralField::from_coeffs(file.metric, file.bandlimit, coeffs)
}

pub fn save_field(path: impl AsRef<Path>, field: &SpectralField) -> Result<()> {
    fs::write(path, field_to_json(field))?;
    Ok(())
}

pub fn load_field(path: impl AsRef<Path>) -> Result<SpectralField> {
    field_from_json(&fs::read_to_string(path)?)
}
