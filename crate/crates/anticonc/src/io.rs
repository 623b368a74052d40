//! JSON wire formats.
//!
//! Measure:      `{"dim": d, "atoms": [{"x": [reals...], "p": real}, ...]}`
//! Coefficients: `{"dim": d, "a": [[reals...], ...]}`
//! Model:        measure schema plus `{"alpha": real}`
//! Weights:      bare JSON array of reals aligned with a measure's atoms.
//!
//! Readers reject non-finite numbers and nonpositive masses.

use crate::error::{Error, Result};
use crate::idiv::CompoundPoissonModel;
use crate::measures::{CoefficientVector, FiniteDiscreteMeasure, MeasureKind, MASS_TOL};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomJson {
    pub x: Vec<f64>,
    pub p: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientsJson {
    pub dim: usize,
    pub a: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
    pub alpha: f64,
}

/// Probability within [`MASS_TOL`], sub-probability up to 1, else
/// unnormalized.
pub fn infer_kind(total_mass: f64) -> MeasureKind {
    if (total_mass - 1.0).abs() <= MASS_TOL {
        MeasureKind::Probability
    } else if total_mass <= 1.0 + MASS_TOL {
        MeasureKind::SubProbability
    } else {
        MeasureKind::Unnormalized
    }
}

pub fn measure_from_json(json: &MeasureJson) -> Result<FiniteDiscreteMeasure> {
    let atoms: Vec<(Vec<f64>, f64)> =
        json.atoms.iter().map(|a| (a.x.clone(), a.p)).collect();
    let total: f64 = atoms.iter().map(|(_, p)| p).sum();
    FiniteDiscreteMeasure::new(json.dim, atoms, infer_kind(total))
}

pub fn measure_to_json(m: &FiniteDiscreteMeasure) -> MeasureJson {
    MeasureJson {
        dim: m.dim(),
        atoms: m
            .atoms()
            .iter()
            .map(|(x, p)| AtomJson { x: x.clone(), p: *p })
            .collect(),
    }
}

pub fn coefficients_from_json(json: &CoefficientsJson) -> Result<CoefficientVector> {
    CoefficientVector::new(json.dim, json.a.clone())
}

pub fn coefficients_to_json(a: &CoefficientVector) -> CoefficientsJson {
    CoefficientsJson {
        dim: a.dim(),
        a: a.entries().to_vec(),
    }
}

pub fn model_from_json(json: &ModelJson) -> Result<CompoundPoissonModel> {
    let jump = measure_from_json(&MeasureJson {
        dim: json.dim,
        atoms: json.atoms.clone(),
    })?;
    if !jump.is_probability() {
        return Err(Error::InvalidMeasure(
            "model jump law must be a probability measure".into(),
        ));
    }
    CompoundPoissonModel::new(json.alpha, jump)
}

pub fn model_to_json(m: &CompoundPoissonModel) -> ModelJson {
    let measure = measure_to_json(m.jump_law());
    ModelJson {
        dim: measure.dim,
        atoms: measure.atoms,
        alpha: m.alpha(),
    }
}

pub fn read_measure(path: &Path) -> Result<FiniteDiscreteMeasure> {
    let text = std::fs::read_to_string(path)?;
    let json: MeasureJson = serde_json::from_str(&text)?;
    measure_from_json(&json)
}

pub fn read_coefficients(path: &Path) -> Result<CoefficientVector> {
    let text = std::fs::read_to_string(path)?;
    let json: CoefficientsJson = serde_json::from_str(&text)?;
    coefficients_from_json(&json)
}

pub fn read_model(path: &Path) -> Result<CompoundPoissonModel> {
    let text = std::fs::read_to_string(path)?;
    let json: ModelJson = serde_json::from_str(&text)?;
    model_from_json(&json)
}

/// Bare JSON array of atom weights for a dominated sub-measure.
pub fn read_weights(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let weights: Vec<f64> = serde_json::from_str(&text)?;
    if !weights.iter().all(|w| w.is_finite()) {
        return Err(Error::InvalidInput("non-finite weight".into()));
    }
    Ok(weights)
}
