//! δ-scopic coarse-graining of Bob's conditional statistics.
//!
//! Allowing Alice's measurement to shift Bob's P result by up to δ is modelled
//! as a convolution of the conditional P distributions with a kernel of width
//! δ. X distributions are left untouched: their indeterminacy is the separate,
//! macroscopic Δ. A Gaussian kernel adds exactly δ² to each conditional
//! variance, so the quadrature witness
//! `½·(1 − 4α²e^{-4α²} + 2δ²)^{1/2}` reaches 1/2 at
//!
//! ```text
//! δ*(α) = √(2α² e^{-4α²}) = √2 α e^{-2α²}
//! ```
//!
//! which shrinks rapidly once α exceeds 1/2. [`critical_delta`] finds δ* by
//! bisection over numerically convolved distributions;
//! [`critical_delta_closed_form`] evaluates the formula above.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic_cat::{
    outcome_probability, p_variance_deficit, tabulate, CatState, ConditionalDist,
    InferenceVariances,
};
use crate::ghz_sim::{build_ghz, ghz_witness_from_state};
use crate::grid::{trapezoid, QuadratureGrid};
use crate::steering::{product_witness, SteeringReport, QUADRATURE_BOUND};
use crate::{Axis, Error, Outcome, Result};

/// A kernel must span at least this many grid steps.
pub const STEPS_PER_WIDTH: f64 = 4.0;

// Gaussian kernels are cut at this many standard deviations.
const GAUSSIAN_CUTOFF: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    Gaussian,
    Box,
}

/// Smearing kernel. `width` is the standard deviation for a Gaussian and the
/// full width for a box, in quadrature units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    kind: KernelKind,
    width: f64,
}

impl Kernel {
    pub fn new(kind: KernelKind, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidParameter(format!("kernel width must be > 0, got {width}")));
        }
        Ok(Self { kind, width })
    }

    pub fn gaussian(width: f64) -> Result<Self> {
        Self::new(KernelKind::Gaussian, width)
    }

    pub fn boxcar(width: f64) -> Result<Self> {
        Self::new(KernelKind::Box, width)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Variance the kernel adds to any distribution it smears.
    pub fn variance(&self) -> f64 {
        match self.kind {
            KernelKind::Gaussian => self.width * self.width,
            KernelKind::Box => self.width * self.width / 12.0,
        }
    }

    /// Discrete weights for offsets `−K..=K` steps, summing to 1.
    fn weights(&self, step: f64) -> Vec<f64> {
        let w = match self.kind {
            KernelKind::Gaussian => {
                let k = (GAUSSIAN_CUTOFF * self.width / step).ceil() as i64;
                (-k..=k)
                    .map(|i| {
                        let x = i as f64 * step / self.width;
                        (-0.5 * x * x).exp()
                    })
                    .collect::<Vec<_>>()
            }
            KernelKind::Box => {
                let half = 0.5 * self.width / step;
                let k = half.floor() as i64;
                (-k..=k)
                    .map(|i| if (i.abs() as f64 - half).abs() < 1e-9 { 0.5 } else { 1.0 })
                    .collect()
            }
        };
        let total: f64 = w.iter().sum();
        w.into_iter().map(|v| v / total).collect()
    }
}

/// Smears a tabulated distribution and renormalizes it to unit integral.
/// Requires `step ≤ width/4`.
pub fn convolve(dist: &ConditionalDist, kernel: &Kernel) -> Result<ConditionalDist> {
    let step = dist.grid.step();
    let limit = kernel.width / STEPS_PER_WIDTH;
    if step > limit * (1.0 + 1e-12) {
        return Err(Error::GridResolution {
            step,
            limit,
            reason: "kernel width / 4",
        });
    }
    let w = kernel.weights(step);
    let k = (w.len() / 2) as isize;
    let f = &dist.densities;
    let n = f.len() as isize;
    let mut out: Vec<f64> = (0..n)
        .into_par_iter()
        .with_min_len(4096)
        .map(|i| {
            let lo = (i - k).max(0);
            let hi = (i + k).min(n - 1);
            (lo..=hi).map(|j| w[(i - j + k) as usize] * f[j as usize]).sum()
        })
        .collect();
    let norm = trapezoid(&out, step);
    if !(norm > 0.0) {
        return Err(Error::InvalidParameter("distribution has zero mass".into()));
    }
    out.iter_mut().for_each(|v| *v /= norm);
    Ok(ConditionalDist {
        densities: out,
        ..dist.clone()
    })
}

/// P grid for smearing at width `delta`: resolves both fringes and kernel and
/// leaves room for the kernel tails beyond ±8.
fn smearing_p_grid(cat: CatState, delta: f64) -> Result<QuadratureGrid> {
    let mut step = (delta / STEPS_PER_WIDTH).min(0.1);
    if !cat.is_product_state() {
        step = step.min(cat.fringe_period() / crate::grid::POINTS_PER_FRINGE);
    }
    QuadratureGrid::symmetric(8.0 + GAUSSIAN_CUTOFF * delta, step)
}

fn weighted_variance(
    cat: CatState,
    setting: Axis,
    dist: impl Fn(Outcome) -> Result<ConditionalDist>,
) -> Result<f64> {
    Outcome::BOTH
        .iter()
        .map(|&o| Ok(outcome_probability(cat, setting, o)? * dist(o)?.moments().variance))
        .sum()
}

/// Inference variances with Bob's σX-conditioned P distributions smeared by a
/// Gaussian of width `delta`; all moments come from numerical quadrature.
pub fn coarse_inference_variances(cat: CatState, delta: f64) -> Result<InferenceVariances> {
    let kernel = Kernel::gaussian(delta)?;
    let var_inf_x = weighted_variance(cat, Axis::Z, |o| {
        tabulate(cat, Axis::Z, o, cat.default_x_grid())
    })?;
    let p_grid = smearing_p_grid(cat, delta)?;
    let var_inf_p = weighted_variance(cat, Axis::X, |o| {
        convolve(&tabulate(cat, Axis::X, o, p_grid)?, &kernel)
    })?;
    Ok(InferenceVariances { var_inf_x, var_inf_p })
}

/// Numerical inference variances without smearing.
pub fn fine_inference_variances(cat: CatState) -> Result<InferenceVariances> {
    let var_inf_x = weighted_variance(cat, Axis::Z, |o| {
        tabulate(cat, Axis::Z, o, cat.default_x_grid())
    })?;
    let var_inf_p = weighted_variance(cat, Axis::X, |o| {
        tabulate(cat, Axis::X, o, cat.default_p_grid())
    })?;
    Ok(InferenceVariances { var_inf_x, var_inf_p })
}

pub fn coarse_witness(cat: CatState, delta: f64) -> Result<SteeringReport> {
    coarse_inference_variances(cat, delta)?.witness_checked()
}

impl InferenceVariances {
    fn witness_checked(&self) -> Result<SteeringReport> {
        product_witness(self.var_inf_x, self.var_inf_p, QUADRATURE_BOUND)
    }
}

/// `√2 α e^{-2α²}`; underflows to 0 for α ≳ 19.
pub fn critical_delta_closed_form(cat: CatState) -> f64 {
    p_variance_deficit(cat).sqrt()
}

/// Smallest δ at which the smeared quadrature witness reaches its bound,
/// located by bisection to absolute tolerance `tol`.
///
/// The bracket is the root of `lhs(δ) − 1/2`; the 1e-12 guard band of the
/// violation flag is not applied here.
pub fn critical_delta(cat: CatState, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
    }
    if cat.is_product_state() || !fine_inference_variances(cat)?.witness().violated {
        return Err(Error::NoSignature { alpha: cat.alpha() });
    }
    let gap = |delta: f64| -> Result<f64> {
        Ok(coarse_witness(cat, delta)?.lhs - QUADRATURE_BOUND)
    };
    let mut hi = 1.0;
    while gap(hi)? < 0.0 {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    while gap(lo)? >= 0.0 {
        hi = lo;
        lo /= 2.0;
        if lo < f64::MIN_POSITIVE {
            return Err(Error::NoSignature { alpha: cat.alpha() });
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One row of a δ scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaScanRow {
    pub delta: f64,
    pub var_inf_p: f64,
    pub product: f64,
    pub violated: bool,
}

/// Evaluates the smeared witness on each δ, in parallel.
pub fn delta_scan(cat: CatState, deltas: &[f64]) -> Result<Vec<DeltaScanRow>> {
    deltas
        .par_iter()
        .map(|&delta| {
            let v = coarse_inference_variances(cat, delta)?;
            let r = v.witness_checked()?;
            Ok(DeltaScanRow {
                delta,
                var_inf_p: v.var_inf_p,
                product: r.lhs,
                violated: r.violated,
            })
        })
        .collect()
}

/// GHZ witness with each inference variance raised by `units²`, i.e. Bob's
/// σ_Z^B and Pr_Y^B outcomes blurred by `units` outcome units.
pub fn ghz_smeared_witness(n: usize, units: f64) -> Result<SteeringReport> {
    if !(units >= 0.0) {
        return Err(Error::InvalidParameter(format!("smearing must be >= 0, got {units}")));
    }
    if !(3..=crate::ghz_sim::MAX_QUBITS).contains(&n) {
        return Err(Error::SizeCap { n, min: 3, max: crate::ghz_sim::MAX_QUBITS });
    }
    Ok(ghz_witness_from_state(&build_ghz(n)?, units * units)?.report)
}

/// Whether the GHZ witness survives smearing by one outcome unit.
pub fn ghz_unit_check(n: usize) -> Result<bool> {
    Ok(ghz_smeared_witness(n, 1.0)?.violated)
}
