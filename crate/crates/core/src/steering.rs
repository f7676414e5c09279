//! Steering-witness arithmetic shared by the oscillator and GHZ realisations.
//!
//! The inference variance of one Bob observable given one Alice setting is
//! `Σ_o P(o)·Var(B | o)`. A product of two inference variances below the
//! uncertainty bound of the corresponding observables rules out every local
//! hidden state model.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uncertainty bound for `ΔX·ΔP` with `[X, P] = i`.
pub const QUADRATURE_BOUND: f64 = 0.5;

/// Guard band below the bound; the inequality is strict.
pub const VIOLATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    pub lhs: f64,
    pub bound: f64,
    pub violated: bool,
    /// `bound − lhs`; positive when the witness is violated.
    pub margin: f64,
}

impl SteeringReport {
    pub fn new(lhs: f64, bound: f64) -> Self {
        Self {
            lhs,
            bound,
            violated: lhs < bound - VIOLATION_TOLERANCE,
            margin: bound - lhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleEntry {
    pub setting: String,
    pub outcome: String,
    pub probability: f64,
    pub mean: f64,
    pub variance: f64,
}

/// Conditional statistics of one Bob observable, one entry per Alice outcome.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConditionalEnsemble {
    pub entries: Vec<EnsembleEntry>,
}

impl ConditionalEnsemble {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        setting: impl Into<String>,
        outcome: impl Into<String>,
        probability: f64,
        mean: f64,
        variance: f64,
    ) -> &mut Self {
        self.entries.push(EnsembleEntry {
            setting: setting.into(),
            outcome: outcome.into(),
            probability,
            mean,
            variance,
        });
        self
    }

    fn validate(&self) -> Result<()> {
        let first = self
            .entries
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty ensemble".into()))?;
        for e in &self.entries {
            if e.setting != first.setting {
                return Err(Error::MixedSettings(first.setting.clone(), e.setting.clone()));
            }
            if !(e.probability >= 0.0) || !(e.variance >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "entry {:?}/{:?} has negative probability or variance",
                    e.setting, e.outcome
                )));
            }
        }
        let total: f64 = self.entries.iter().map(|e| e.probability).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "outcome probabilities sum to {total}, not 1"
            )));
        }
        Ok(())
    }
}

/// `Σ P(outcome)·Var(·|outcome)` over a single-setting ensemble.
pub fn inference_variance(ens: &ConditionalEnsemble) -> Result<f64> {
    ens.validate()?;
    Ok(ens.entries.iter().map(|e| e.probability * e.variance).sum())
}

/// `lhs = √(var_a·var_b)`, violated iff `lhs < bound`.
pub fn product_witness(var_a: f64, var_b: f64, bound: f64) -> Result<SteeringReport> {
    for (name, v) in [("var_a", var_a), ("var_b", var_b), ("bound", bound)] {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
        }
    }
    Ok(SteeringReport::new((var_a * var_b).sqrt(), bound))
}

/// Whether the cat paradox can still be signified when hidden variables for X
/// and P are only fixed up to `Delta` and `delta`, given `ΔX·ΔP ≥ c`.
/// True iff `Delta·delta < c`.
pub fn falsifiability_2b(big_delta: f64, delta: f64, c: f64) -> Result<bool> {
    for (name, v) in [("Delta", big_delta), ("delta", delta), ("c", c)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
        }
    }
    Ok(big_delta * delta < c)
}
