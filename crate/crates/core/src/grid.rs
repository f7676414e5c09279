//! Uniform quadrature grids and trapezoid integration.

use serde::{Deserialize, Serialize};

use crate::{Error, MomentSummary, Result};

/// Points per fringe period a P-basis grid must sample.
pub const POINTS_PER_FRINGE: f64 = 8.0;

// Slack for step/limit comparisons so that a step computed as exactly
// `limit` is not rejected on rounding.
const STEP_SLACK: f64 = 1e-12;

/// Uniform grid `min, min + step, ...` with `floor((max − min)/step) + 1` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    min: f64,
    max: f64,
    step: f64,
}

impl QuadratureGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::InvalidParameter("grid bounds must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidParameter(format!("grid step must be > 0, got {step}")));
        }
        if min >= max {
            return Err(Error::InvalidParameter(format!(
                "grid needs min < max, got {min}:{max}"
            )));
        }
        Ok(Self { min, max, step })
    }

    /// Grid symmetric about zero whose points are integer multiples of `step`
    /// and which covers at least `[-half_span, half_span]`.
    pub fn symmetric(half_span: f64, step: f64) -> Result<Self> {
        Self::centered(0.0, half_span, step)
    }

    /// Grid of points `center + k·step` covering at least
    /// `[center − half_span, center + half_span]`.
    pub fn centered(center: f64, half_span: f64, step: f64) -> Result<Self> {
        if !(half_span > 0.0) || !(step > 0.0) {
            return Err(Error::InvalidParameter(
                "half span and step must be positive".into(),
            ));
        }
        let k = (half_span / step - 1e-9).ceil();
        Self::new(center - k * step, center + k * step, step)
    }

    /// Parses `min:max:step`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "grid must be min:max:step, got {spec:?}"
            )));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad grid number {s:?}")))
        };
        Self::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Checks that the step resolves an oscillation of the given period with
    /// at least [`POINTS_PER_FRINGE`] samples.
    pub fn check_resolves(&self, period: f64, reason: &'static str) -> Result<()> {
        let limit = period / POINTS_PER_FRINGE;
        if self.step > limit * (1.0 + STEP_SLACK) {
            return Err(Error::GridResolution {
                step: self.step,
                limit,
                reason,
            });
        }
        Ok(())
    }
}

/// Trapezoid rule for samples on a uniform grid of spacing `step`.
pub fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = values[1..n - 1].iter().sum();
            step * (interior + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Normalization, mean and variance of a tabulated density, by trapezoid.
pub fn density_moments(grid: &QuadratureGrid, densities: &[f64]) -> (f64, MomentSummary) {
    let h = grid.step();
    let xs: Vec<f64> = grid.points().collect();
    let norm = trapezoid(densities, h);
    let first: Vec<f64> = xs.iter().zip(densities).map(|(x, d)| x * d).collect();
    let mean = trapezoid(&first, h) / norm;
    let second: Vec<f64> = xs
        .iter()
        .zip(densities)
        .map(|(x, d)| (x - mean).powi(2) * d)
        .collect();
    let variance = trapezoid(&second, h) / norm;
    (norm, MomentSummary { mean, variance })
}
