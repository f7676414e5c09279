//! Closed-form statistics of the coherent cat state
//! `(e^{-iπ/4}|α⟩|↑⟩ + e^{iπ/4}|−α⟩|↓⟩)/√2` with real `α ≥ 0`.
//!
//! Alice measures the spin, Bob measures a quadrature of the oscillator.
//! Conditioned on `σZ = ±1` Bob holds `|±α⟩`, so the X distribution is a
//! Gaussian hill centred at `±√2α` with variance 1/2. Conditioned on
//! `σX = ±1` the P distribution carries interference fringes,
//!
//! ```text
//! P±(p) = e^{-p²} (1 ± sin(2√2 α p)) / √π
//! ```
//!
//! with fringe period `π/(√2α)`. Its moments follow from the Gaussian
//! integral `∫ p e^{-p²} sin(kp) dp = (k√π/2) e^{-k²/4}` and the vanishing of
//! the odd part in `⟨p²⟩`:
//!
//! ```text
//! ⟨p⟩± = ±√2 α e^{-2α²},    Var(P|σX = ±1) = 1/2 − 2α² e^{-4α²}
//! ```
//!
//! The exponent is `4α²`; this form is confirmed by direct quadrature of the
//! fringe density and by the number-basis construction in
//! [`crate::fock_oracle`] (see the tests). Both outcomes of either spin setting
//! occur with probability 1/2.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::grid::{density_moments, trapezoid, QuadratureGrid};
use crate::steering::{product_witness, SteeringReport, QUADRATURE_BOUND};
use crate::{Axis, Basis, Error, MomentSummary, Outcome, Result};

/// `1/√π`, the peak of a vacuum-width Gaussian hill.
pub const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Coherent-cat amplitude. `α = 0` is the degenerate product state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatState {
    alpha: f64,
}

impl CatState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// At `α = 0` the cat factorizes into vacuum ⊗ spin and nothing can be
    /// steered.
    pub fn is_product_state(&self) -> bool {
        self.alpha == 0.0
    }

    /// Spacing of the P-basis interference fringes, `π/(√2α)`; infinite at
    /// `α = 0`.
    pub fn fringe_period(&self) -> f64 {
        PI / (SQRT_2 * self.alpha)
    }

    /// X span `±(√2α + 8)`, step `0.01·min(1, 1/α)`.
    pub fn default_x_grid(&self) -> QuadratureGrid {
        let step = 0.01 * (1.0f64).min(1.0 / self.alpha);
        QuadratureGrid::symmetric(SQRT_2 * self.alpha + 8.0, step)
            .expect("positive span and step")
    }

    /// P span `±8`, step one eighth of a fringe period (capped at 0.1 for
    /// small α). Points are integer multiples of the step so fringe extrema
    /// land on grid points.
    pub fn default_p_grid(&self) -> QuadratureGrid {
        let step = (self.fringe_period() / crate::grid::POINTS_PER_FRINGE).min(0.1);
        QuadratureGrid::symmetric(8.0, step).expect("positive span and step")
    }

    pub fn check_p_grid(&self, grid: &QuadratureGrid) -> Result<()> {
        if self.is_product_state() {
            return Ok(());
        }
        grid.check_resolves(self.fringe_period(), "P-basis fringe period / 8")
    }
}

/// Element-of-reality assignment `(λ_Z, λ_X)` for the cat system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementOfRealityState {
    pub lambda_z: Outcome,
    pub lambda_x: Outcome,
}

impl ElementOfRealityState {
    pub const ALL: [ElementOfRealityState; 4] = [
        Self::new(Outcome::Plus, Outcome::Plus),
        Self::new(Outcome::Plus, Outcome::Minus),
        Self::new(Outcome::Minus, Outcome::Plus),
        Self::new(Outcome::Minus, Outcome::Minus),
    ];

    pub const fn new(lambda_z: Outcome, lambda_x: Outcome) -> Self {
        Self { lambda_z, lambda_x }
    }
}

/// Bob's quadrature distribution conditioned on one Alice setting/outcome,
/// tabulated on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalDist {
    pub basis: Basis,
    pub alice_setting: Axis,
    pub alice_outcome: Outcome,
    pub grid: QuadratureGrid,
    pub densities: Vec<f64>,
}

impl ConditionalDist {
    pub fn integral(&self) -> f64 {
        trapezoid(&self.densities, self.grid.step())
    }

    /// Mean and variance of the normalized tabulated density.
    pub fn moments(&self) -> MomentSummary {
        density_moments(&self.grid, &self.densities).1
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.points()
    }
}

/// `e^{-(x ∓ √2α)²}/√π`, Bob's X density after Alice finds `σZ = ±1`.
pub fn cond_x_density(cat: CatState, outcome: Outcome, x: f64) -> f64 {
    let centre = outcome.sign() * SQRT_2 * cat.alpha;
    INV_SQRT_PI * (-(x - centre).powi(2)).exp()
}

/// `e^{-p²}(1 ± sin(2√2αp))/√π`, Bob's P density after Alice finds `σX = ±1`.
pub fn cond_p_density(cat: CatState, outcome: Outcome, p: f64) -> f64 {
    let fringe = (2.0 * SQRT_2 * p * cat.alpha).sin();
    INV_SQRT_PI * (-p * p).exp() * (1.0 + outcome.sign() * fringe)
}

/// Quadrature Bob reads out for a given Alice setting: X after σZ, P after σX.
pub fn bob_basis(setting: Axis) -> Result<Basis> {
    match setting {
        Axis::Z => Ok(Basis::X),
        Axis::X => Ok(Basis::P),
        Axis::Y => Err(Error::InvalidParameter(
            "the coherent cat has no closed form for a σY-conditioned quadrature".into(),
        )),
    }
}

/// Probability of each Alice outcome for σZ or σX; 1/2 for every α.
pub fn outcome_probability(_cat: CatState, setting: Axis, _outcome: Outcome) -> Result<f64> {
    bob_basis(setting)?;
    Ok(0.5)
}

/// Conditional density for `setting ∈ {σZ, σX}` evaluated at one point.
pub fn cond_density(cat: CatState, setting: Axis, outcome: Outcome, value: f64) -> Result<f64> {
    Ok(match bob_basis(setting)? {
        Basis::X => cond_x_density(cat, outcome, value),
        Basis::P => cond_p_density(cat, outcome, value),
    })
}

/// Closed-form conditional mean and variance.
pub fn conditional_moments(cat: CatState, setting: Axis, outcome: Outcome) -> Result<MomentSummary> {
    let a = cat.alpha;
    let s = outcome.sign();
    Ok(match bob_basis(setting)? {
        Basis::X => MomentSummary {
            mean: s * SQRT_2 * a,
            variance: 0.5,
        },
        Basis::P => {
            let shift = SQRT_2 * a * (-2.0 * a * a).exp();
            MomentSummary {
                mean: s * shift,
                variance: 0.5 - shift * shift,
            }
        }
    })
}

/// Fringe-induced reduction of the conditional P variance below the coherent
/// value 1/2: `2α² e^{-4α²}`.
pub fn p_variance_deficit(cat: CatState) -> f64 {
    let a = cat.alpha;
    2.0 * a * a * (-4.0 * a * a).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InferenceVariances {
    pub var_inf_x: f64,
    pub var_inf_p: f64,
}

impl InferenceVariances {
    /// `Δ_inf X · Δ_inf P` tested against 1/2.
    pub fn witness(&self) -> SteeringReport {
        product_witness(self.var_inf_x, self.var_inf_p, QUADRATURE_BOUND)
            .expect("variances are non-negative")
    }
}

/// Outcome-weighted conditional variances of X (given σZ) and P (given σX).
pub fn inference_variances(cat: CatState) -> InferenceVariances {
    let weighted = |setting| {
        Outcome::BOTH
            .iter()
            .map(|&o| {
                let p = outcome_probability(cat, setting, o).expect("σZ/σX");
                p * conditional_moments(cat, setting, o).expect("σZ/σX").variance
            })
            .sum::<f64>()
    };
    InferenceVariances {
        var_inf_x: weighted(Axis::Z),
        var_inf_p: weighted(Axis::X),
    }
}

/// Quadrature steering witness for the cat,
/// `Δ_inf X Δ_inf P = ½ (1 − 4α² e^{-4α²})^{1/2}` against 1/2.
pub fn steering_witness(cat: CatState) -> SteeringReport {
    inference_variances(cat).witness()
}

/// `1/2 − Δ_inf X Δ_inf P` without cancellation: with `d` the P-variance
/// deficit, `½(1 − √(1 − 2d)) = d / (1 + √(1 − 2d))`. Stays positive long
/// after the witness itself rounds to 1/2.
pub fn witness_margin(cat: CatState) -> f64 {
    let d = p_variance_deficit(cat);
    d / (1.0 + (1.0 - 2.0 * d).sqrt())
}

/// Tabulates a conditional density. P-basis grids must resolve the fringes.
pub fn tabulate(
    cat: CatState,
    setting: Axis,
    outcome: Outcome,
    grid: QuadratureGrid,
) -> Result<ConditionalDist> {
    let basis = bob_basis(setting)?;
    if basis == Basis::P {
        cat.check_p_grid(&grid)?;
    }
    let densities = grid
        .points()
        .map(|v| cond_density(cat, setting, outcome, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionalDist {
        basis,
        alice_setting: setting,
        alice_outcome: outcome,
        grid,
        densities,
    })
}

/// `(P_{λZ}(x), P_{λX}(p))`, the predictions an element-of-reality state
/// would have to carry.
pub fn element_of_reality_predictions(
    cat: CatState,
    eor: ElementOfRealityState,
    x_grid: QuadratureGrid,
    p_grid: QuadratureGrid,
) -> Result<(ConditionalDist, ConditionalDist)> {
    let px = tabulate(cat, Axis::Z, eor.lambda_z, x_grid)?;
    let pp = tabulate(cat, Axis::X, eor.lambda_x, p_grid)?;
    Ok((px, pp))
}

/// Product density `P_{λZ}(x_i) · P_{λX}(p_j)` on an x × p grid, row-major in x.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub xs: Vec<f64>,
    pub ps: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ps.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.ps.len();
        &self.values[i * w..(i + 1) * w]
    }

    /// Column `j` (fixed p, varying x).
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.xs.len()).map(|i| self.get(i, j)).collect()
    }
}

pub fn fig2_density_grid(
    cat: CatState,
    eor: ElementOfRealityState,
    x_grid: QuadratureGrid,
    p_grid: QuadratureGrid,
) -> Result<DensityMatrix> {
    cat.check_p_grid(&p_grid)?;
    let xs: Vec<f64> = x_grid.points().collect();
    let ps: Vec<f64> = p_grid.points().collect();
    let px: Vec<f64> = xs.iter().map(|&x| cond_x_density(cat, eor.lambda_z, x)).collect();
    let pp: Vec<f64> = ps.iter().map(|&p| cond_p_density(cat, eor.lambda_x, p)).collect();
    let mut values = Vec::with_capacity(xs.len() * ps.len());
    for a in &px {
        values.extend(pp.iter().map(|b| a * b));
    }
    Ok(DensityMatrix { xs, ps, values })
}

/// Witness value at the α that maximizes the P-variance deficit (`α = 1/2`).
pub fn witness_minimum() -> (f64, f64) {
    let alpha = 0.5;
    let cat = CatState { alpha };
    (alpha, steering_witness(cat).lhs)
}
