//! Data behind the element-of-reality panels and the P(x)·P(p) contour maps.

use std::f64::consts::SQRT_2;

use crate::analytic_cat::{
    element_of_reality_predictions, fig2_density_grid, CatState, ConditionalDist, DensityMatrix,
    ElementOfRealityState,
};
use crate::grid::{QuadratureGrid, POINTS_PER_FRINGE};
use crate::{Outcome, Result};

pub const FIG2_DEFAULT_ALPHAS: [f64; 3] = [2.0, 10.0, 100.0];

/// One element-of-reality state with its X and P predictions.
#[derive(Debug, Clone)]
pub struct Fig1Panel {
    pub eor: ElementOfRealityState,
    pub x: ConditionalDist,
    pub p: ConditionalDist,
}

impl Fig1Panel {
    /// File stems, e.g. `fig1_lz+1_lx-1_x` and `fig1_lz+1_lx-1_p`.
    pub fn file_stems(&self) -> (String, String) {
        let base = format!("fig1_lz{}_lx{}", sign(self.eor.lambda_z), sign(self.eor.lambda_x));
        (format!("{base}_x"), format!("{base}_p"))
    }
}

fn sign(o: Outcome) -> &'static str {
    match o {
        Outcome::Plus => "+1",
        Outcome::Minus => "-1",
    }
}

/// Four states × (X, P) on the default grids.
pub fn fig1_panels(cat: CatState) -> Result<Vec<Fig1Panel>> {
    ElementOfRealityState::ALL
        .iter()
        .map(|&eor| {
            let (x, p) =
                element_of_reality_predictions(cat, eor, cat.default_x_grid(), cat.default_p_grid())?;
            Ok(Fig1Panel { eor, x, p })
        })
        .collect()
}

/// Contour-map window: x within ±4 of the λ_Z = +1 hill at step 0.05, p
/// within ±4 at `min(0.05, fringe period/8)`. P points are multiples of the
/// step, so the fringe extrema are sampled exactly when the step is a whole
/// fraction of the period.
pub fn fig2_grids(cat: CatState) -> Result<(QuadratureGrid, QuadratureGrid)> {
    let gx = QuadratureGrid::centered(SQRT_2 * cat.alpha(), 4.0, 0.05)?;
    let mut step: f64 = 0.05;
    if !cat.is_product_state() {
        step = step.min(cat.fringe_period() / POINTS_PER_FRINGE);
    }
    let gp = QuadratureGrid::symmetric(4.0, step)?;
    Ok((gx, gp))
}

/// `P_1(x)·P_1(p)` for the (1, 1) state on the auto-resolved window.
pub fn fig2_matrix(cat: CatState) -> Result<DensityMatrix> {
    let (gx, gp) = fig2_grids(cat)?;
    fig2_density_grid(cat, ElementOfRealityState::new(Outcome::Plus, Outcome::Plus), gx, gp)
}
