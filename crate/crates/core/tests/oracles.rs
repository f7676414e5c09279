//! Cross-checks between the closed forms, the number-basis model and plain
//! quadrature written here from scratch.

use std::f64::consts::{PI, SQRT_2};

use catsteer::analytic_cat::{
    conditional_moments, cond_p_density, cond_x_density, inference_variances, CatState,
};
use catsteer::fock_oracle::{
    build_coherent_cat, parity_condition, project_spin, quadrature_density, FockConfig,
};
use catsteer::{Axis, Basis, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALPHAS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// Composite Simpson on [a, b] with an even number of panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn conditional_densities_match_number_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in ALPHAS {
        let cat = CatState::new(a).unwrap();
        let state = build_coherent_cat(a, FockConfig::for_alpha(a).dim).unwrap();
        for o in Outcome::BOTH {
            let (pz, osc_z) = project_spin(&state, Axis::Z, o).unwrap();
            let (px, osc_x) = project_spin(&state, Axis::X, o).unwrap();
            assert!((pz - 0.5).abs() < 1e-12 && (px - 0.5).abs() < 1e-12);
            for _ in 0..100 {
                let x = o.sign() * SQRT_2 * a + rng.random_range(-4.0..4.0);
                let d = quadrature_density(&osc_z, Basis::X, x) - cond_x_density(cat, o, x);
                assert!(d.abs() < 1e-8, "α={a} x={x} diff={d}");
                let p = rng.random_range(-4.0..4.0);
                let d = quadrature_density(&osc_x, Basis::P, p) - cond_p_density(cat, o, p);
                assert!(d.abs() < 1e-8, "α={a} p={p} diff={d}");
            }
        }
    }
}

#[test]
fn p_variance_closed_form_matches_direct_integration() {
    for a in [0.1, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0] {
        let cat = CatState::new(a).unwrap();
        for o in Outcome::BOTH {
            let f = |p: f64| cond_p_density(cat, o, p);
            let norm = simpson(f, -12.0, 12.0, 40_000);
            let mean = simpson(|p| p * f(p), -12.0, 12.0, 40_000);
            let second = simpson(|p| p * p * f(p), -12.0, 12.0, 40_000);
            let var = second - mean * mean;
            let m = conditional_moments(cat, Axis::X, o).unwrap();
            assert!((norm - 1.0).abs() < 1e-12);
            assert!((m.mean - mean).abs() < 1e-10, "α={a}");
            assert!((m.variance - var).abs() < 1e-10, "α={a}: {} vs {var}", m.variance);
            // The α⁴ exponent disagrees once α ≠ 1.
            let quartic = 0.5 - 2.0 * a * a * (-4.0 * a.powi(4)).exp();
            if (a - 1.0).abs() > 0.2 && a < 2.0 {
                assert!((quartic - var).abs() > 1e-4, "α={a}");
            }
        }
    }
}

#[test]
fn p_variance_matches_ladder_moments() {
    for a in ALPHAS {
        let cat = CatState::new(a).unwrap();
        let state = build_coherent_cat(a, FockConfig::for_alpha(a).dim).unwrap();
        for o in Outcome::BOTH {
            let (_, osc) = project_spin(&state, Axis::X, o).unwrap();
            let fock = osc.quadrature_moments(Basis::P);
            let closed = conditional_moments(cat, Axis::X, o).unwrap();
            assert!((fock.mean - closed.mean).abs() < 1e-10);
            assert!((fock.variance - closed.variance).abs() < 1e-10);
            let xz = project_spin(&state, Axis::Z, o).unwrap().1.quadrature_moments(Basis::X);
            assert!((xz.variance - 0.5).abs() < 1e-10);
            assert!((xz.mean - o.sign() * SQRT_2 * a).abs() < 1e-10);
        }
    }
}

/// The P wavefunction phase `iⁿ` must agree with `P = i(a − a†)/√2`: moments
/// integrated from `|⟨p|ψ⟩|²` equal the ladder-operator moments.
#[test]
fn p_wavefunction_phase_convention() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let amps: Vec<_> = (0..12)
            .map(|_| num_complex::Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let osc = catsteer::fock_oracle::OscillatorState::from_amplitudes(amps).unwrap();
        for basis in [Basis::X, Basis::P] {
            let f = |v: f64| quadrature_density(&osc, basis, v);
            let mean = simpson(|v| v * f(v), -12.0, 12.0, 8000);
            let second = simpson(|v| v * v * f(v), -12.0, 12.0, 8000);
            let m = osc.quadrature_moments(basis);
            assert!((m.mean - mean).abs() < 1e-9, "{basis:?}");
            assert!((m.variance - (second - mean * mean)).abs() < 1e-9, "{basis:?}");
        }
    }
}

#[test]
fn conditioned_states_respect_heisenberg() {
    for a in ALPHAS {
        let state = build_coherent_cat(a, FockConfig::for_alpha(a).dim).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for o in Outcome::BOTH {
                let (_, osc) = project_spin(&state, axis, o).unwrap();
                let vx = osc.quadrature_moments(Basis::X).variance;
                let vp = osc.quadrature_moments(Basis::P).variance;
                assert!(vx * vp >= 0.25 - 1e-10, "α={a} {axis:?}: {}", vx * vp);
            }
        }
    }
}

#[test]
fn inference_product_beats_heisenberg() {
    // At α = 4 the deficit 2α²e^{-4α²} is below f64 resolution.
    for a in [0.5, 1.0, 2.0] {
        let iv = inference_variances(CatState::new(a).unwrap());
        assert!(iv.var_inf_x * iv.var_inf_p < 0.25);
    }
}

#[test]
fn parity_probabilities_and_sigma_y() {
    for a in ALPHAS {
        let state = build_coherent_cat(a, FockConfig::for_alpha(a).dim).unwrap();
        let (pe, be) = parity_condition(&state, Outcome::Plus).unwrap();
        let (po, bo) = parity_condition(&state, Outcome::Minus).unwrap();
        let c = (-2.0 * a * a).exp();
        assert!((pe - (1.0 + c) / 2.0).abs() < 1e-12);
        assert!((po - (1.0 - c) / 2.0).abs() < 1e-12);
        assert!((be.by - 1.0).abs() < 1e-10 && (bo.by + 1.0).abs() < 1e-10);
        assert!(be.length() <= 1.0 + 1e-10);
    }
}

#[test]
fn fringe_period_from_zero_spacing() {
    // Zeros of 1 − sin(2√2αp) are one period π/(√2α) apart.
    for a in [2.0, 10.0] {
        let cat = CatState::new(a).unwrap();
        let t = PI / (SQRT_2 * a);
        let p0 = PI / 2.0 / (2.0 * SQRT_2 * a);
        for k in 0..3 {
            assert!(cond_p_density(cat, Outcome::Minus, p0 + k as f64 * t) < 1e-15);
        }
        assert!((cat.fringe_period() - t).abs() < 1e-15);
    }
}
