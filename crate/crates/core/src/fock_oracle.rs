//! Brute-force number-basis model of the coherent cat.
//!
//! The joint state is stored as two amplitude vectors (spin up, spin down)
//! over oscillator number states `0..dim`. Conditional oscillator states,
//! quadrature densities and parity-conditioned spin states are computed from
//! these amplitudes without using any of the closed forms in
//! [`crate::analytic_cat`], so the two can be checked against each other.
//!
//! Wavefunctions: `⟨x|n⟩ = ψ_n(x)` and, for `P = i(a − a†)/√2`,
//! `⟨p|n⟩ = iⁿ ψ_n(p)`, with `ψ_n` the normalized Hermite functions.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64 as C64;

use crate::steering::SteeringReport;
use crate::{Axis, Basis, Error, MomentSummary, Outcome, Result};

/// Largest discarded Poisson mass accepted when building coherent states.
pub const MAX_TRUNCATION_ERROR: f64 = 1e-12;

/// Branches with squared norm at or below this are treated as impossible.
pub const IMPOSSIBLE_PROBABILITY: f64 = 1e-300;

/// Number-basis truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub dim: usize,
}

impl FockConfig {
    /// `dim = ceil(α² + 8α + 20)`, which keeps the Poisson tail below `1e-12`
    /// for `α ≤ 4`.
    pub fn for_alpha(alpha: f64) -> Self {
        let a = alpha.abs();
        Self {
            dim: (a * a + 8.0 * a + 20.0).ceil() as usize,
        }
    }
}

/// Poisson tail `Σ_{n ≥ dim} e^{-α²} α^{2n}/n!`, the probability a coherent
/// state places outside the truncated space.
pub fn truncation_error(alpha: f64, dim: usize) -> f64 {
    let mean = alpha * alpha;
    if mean == 0.0 {
        return if dim == 0 { 1.0 } else { 0.0 };
    }
    // Summed upward from `dim` in log space; no cancellation against 1.
    let ln_mean = mean.ln();
    let mut ln_fact = 0.0;
    for k in 1..=dim {
        ln_fact += (k as f64).ln();
    }
    let mut sum = 0.0;
    let mut n = dim;
    loop {
        let term = (-mean + n as f64 * ln_mean - ln_fact).exp();
        sum += term;
        if n as f64 > mean && (term <= sum * 1e-17 || term == 0.0) {
            break;
        }
        n += 1;
        ln_fact += (n as f64).ln();
    }
    sum.min(1.0)
}

/// `c_n = e^{-α²/2} αⁿ/√(n!)` by the recurrence `c_{n+1} = c_n α/√(n+1)`.
pub fn coherent_amplitudes(alpha: f64, dim: usize) -> Result<Vec<C64>> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be >= 1".into()));
    }
    let tail = truncation_error(alpha, dim);
    if tail > MAX_TRUNCATION_ERROR {
        return Err(Error::Truncation { alpha, dim, tail });
    }
    let mut c = Vec::with_capacity(dim);
    let mut cur = (-0.5 * alpha * alpha).exp();
    for n in 0..dim {
        c.push(C64::new(cur, 0.0));
        cur *= alpha / ((n + 1) as f64).sqrt();
    }
    Ok(c)
}

/// Normalized Hermite functions `ψ_0(x) ..= ψ_max_n(x)` by the three-term
/// recurrence `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`.
pub fn hermite_wavefunctions(max_n: usize, x: f64) -> Vec<f64> {
    let mut psi = Vec::with_capacity(max_n + 1);
    psi.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if max_n >= 1 {
        psi.push(SQRT_2 * x * psi[0]);
    }
    for k in 1..max_n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * psi[k] - (kf / (kf + 1.0)).sqrt() * psi[k - 1];
        psi.push(next);
    }
    psi
}

/// `ψ_n(x) = π^{-1/4} (2ⁿ n!)^{-1/2} H_n(x) e^{-x²/2}`.
pub fn hermite_wavefunction(n: usize, x: f64) -> f64 {
    hermite_wavefunctions(n, x)[n]
}

/// `iⁿ`
fn i_pow(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Single-oscillator pure state in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorState {
    amps: Vec<C64>,
}

impl OscillatorState {
    /// Normalizes `amps`; a null vector is an impossible outcome.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n2 = norm_sqr(&amps);
        if !(n2 > IMPOSSIBLE_PROBABILITY) {
            return Err(Error::ImpossibleOutcome { probability: n2 });
        }
        let s = 1.0 / n2.sqrt();
        Ok(Self {
            amps: amps.into_iter().map(|z| z * s).collect(),
        })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        let mut a = vec![C64::new(0.0, 0.0); dim.max(1)];
        a[0] = C64::new(1.0, 0.0);
        Self::from_amplitudes(a)
    }

    pub fn coherent(alpha: f64, dim: usize) -> Result<Self> {
        Self::from_amplitudes(coherent_amplitudes(alpha, dim)?)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Wavefunction value in the chosen quadrature representation.
    pub fn wavefunction(&self, basis: Basis, value: f64) -> C64 {
        let psi = hermite_wavefunctions(self.dim() - 1, value);
        self.amps
            .iter()
            .zip(&psi)
            .enumerate()
            .map(|(n, (a, p))| match basis {
                Basis::X => a * *p,
                Basis::P => a * i_pow(n) * *p,
            })
            .sum()
    }

    /// `⟨a⟩ = Σ √(n+1) c_n* c_{n+1}`
    fn lowering_mean(&self) -> C64 {
        (0..self.dim().saturating_sub(1))
            .map(|n| self.amps[n].conj() * self.amps[n + 1] * ((n + 1) as f64).sqrt())
            .sum()
    }

    /// `⟨a²⟩ = Σ √((n+1)(n+2)) c_n* c_{n+2}`
    fn lowering_sq_mean(&self) -> C64 {
        (0..self.dim().saturating_sub(2))
            .map(|n| {
                self.amps[n].conj() * self.amps[n + 2] * (((n + 1) * (n + 2)) as f64).sqrt()
            })
            .sum()
    }

    fn number_mean(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, z)| n as f64 * z.norm_sqr())
            .sum()
    }

    /// Quadrature mean and variance from ladder-operator matrix elements:
    /// `⟨X⟩ = √2 Re⟨a⟩`, `⟨P⟩ = −√2 Im⟨a⟩`,
    /// `⟨X²⟩ = Re⟨a²⟩ + ⟨n⟩ + ½`, `⟨P²⟩ = −Re⟨a²⟩ + ⟨n⟩ + ½`.
    pub fn quadrature_moments(&self, basis: Basis) -> MomentSummary {
        let a = self.lowering_mean();
        let a2 = self.lowering_sq_mean();
        let n = self.number_mean();
        let (mean, second) = match basis {
            Basis::X => (SQRT_2 * a.re, a2.re + n + 0.5),
            Basis::P => (-SQRT_2 * a.im, -a2.re + n + 0.5),
        };
        MomentSummary {
            mean,
            variance: second - mean * mean,
        }
    }
}

/// `|Σ_n a_n φ_n(value)|²` with `φ_n = ψ_n` (X) or `iⁿ ψ_n` (P).
pub fn quadrature_density(osc: &OscillatorState, basis: Basis, value: f64) -> f64 {
    osc.wavefunction(basis, value).norm_sqr()
}

/// Spin-1/2 Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

impl BlochVector {
    pub fn length(&self) -> f64 {
        (self.bx * self.bx + self.by * self.by + self.bz * self.bz).sqrt()
    }

    pub fn component(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.bx,
            Axis::Y => self.by,
            Axis::Z => self.bz,
        }
    }

    /// Variance of the Pauli observable along `axis`, `1 − ⟨σ⟩²`.
    pub fn pauli_variance(&self, axis: Axis) -> f64 {
        (1.0 - self.component(axis).powi(2)).max(0.0)
    }

    /// From an unnormalized 2×2 spin matrix `[[uu, ud], [du, dd]]` with
    /// `ud = Σ a_↑ a_↓*`.
    fn from_spin_matrix(uu: f64, dd: f64, ud: C64) -> Self {
        let tr = uu + dd;
        Self {
            bx: 2.0 * ud.re / tr,
            by: -2.0 * ud.im / tr,
            bz: (uu - dd) / tr,
        }
    }
}

/// Eigenvector `(⟨↑|e⟩, ⟨↓|e⟩)` of the Pauli matrix along `axis`.
pub fn spin_eigenvector(axis: Axis, outcome: Outcome) -> [C64; 2] {
    let s = outcome.sign();
    match axis {
        Axis::Z => match outcome {
            Outcome::Plus => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            Outcome::Minus => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        },
        Axis::X => [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(s * FRAC_1_SQRT_2, 0.0)],
        Axis::Y => [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, s * FRAC_1_SQRT_2)],
    }
}

/// Spin ⊗ truncated oscillator pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct JointFockState {
    up: Vec<C64>,
    down: Vec<C64>,
    truncation_error: f64,
}

impl JointFockState {
    /// Normalizes the pair of branch vectors; the pre-normalization deficit is
    /// kept as the truncation error.
    pub fn from_branches(up: Vec<C64>, down: Vec<C64>) -> Result<Self> {
        if up.len() != down.len() {
            return Err(Error::LengthMismatch {
                expected: up.len(),
                got: down.len(),
            });
        }
        let n2 = norm_sqr(&up) + norm_sqr(&down);
        if !(n2 > IMPOSSIBLE_PROBABILITY) {
            return Err(Error::ImpossibleOutcome { probability: n2 });
        }
        let s = 1.0 / n2.sqrt();
        Ok(Self {
            up: up.into_iter().map(|z| z * s).collect(),
            down: down.into_iter().map(|z| z * s).collect(),
            truncation_error: (1.0 - n2).max(0.0),
        })
    }

    /// `spin ⊗ osc` for a spin vector `(⟨↑|s⟩, ⟨↓|s⟩)`.
    pub fn product(spin: [C64; 2], osc: &OscillatorState) -> Result<Self> {
        let up = osc.amplitudes().iter().map(|a| spin[0] * a).collect();
        let down = osc.amplitudes().iter().map(|a| spin[1] * a).collect();
        Self::from_branches(up, down)
    }

    pub fn dim(&self) -> usize {
        self.up.len()
    }

    pub fn up(&self) -> &[C64] {
        &self.up
    }

    pub fn down(&self) -> &[C64] {
        &self.down
    }

    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Bloch vector of the reduced spin state.
    pub fn spin_bloch(&self) -> BlochVector {
        spin_block(&self.up, &self.down, |_| true)
    }
}

fn spin_block(up: &[C64], down: &[C64], keep: impl Fn(usize) -> bool) -> BlochVector {
    let (mut uu, mut dd, mut ud) = (0.0, 0.0, C64::new(0.0, 0.0));
    for n in (0..up.len()).filter(|&n| keep(n)) {
        uu += up[n].norm_sqr();
        dd += down[n].norm_sqr();
        ud += up[n] * down[n].conj();
    }
    BlochVector::from_spin_matrix(uu, dd, ud)
}

/// `(e^{-iπ/4}|α⟩|↑⟩ + e^{iπ/4}|−α⟩|↓⟩)/√2` truncated at `dim`.
pub fn build_coherent_cat(alpha: f64, dim: usize) -> Result<JointFockState> {
    let plus = coherent_amplitudes(alpha, dim)?;
    let minus = coherent_amplitudes(-alpha, dim)?;
    let ph_up = C64::from_polar(FRAC_1_SQRT_2, -PI / 4.0);
    let ph_down = C64::from_polar(FRAC_1_SQRT_2, PI / 4.0);
    JointFockState::from_branches(
        plus.into_iter().map(|c| c * ph_up).collect(),
        minus.into_iter().map(|c| c * ph_down).collect(),
    )
}

/// Alice measures the spin along `axis`; returns the outcome probability and
/// Bob's renormalized oscillator state.
pub fn project_spin(
    state: &JointFockState,
    axis: Axis,
    outcome: Outcome,
) -> Result<(f64, OscillatorState)> {
    let e = spin_eigenvector(axis, outcome);
    let (eu, ed) = (e[0].conj(), e[1].conj());
    let branch: Vec<C64> = state
        .up
        .iter()
        .zip(&state.down)
        .map(|(u, d)| eu * u + ed * d)
        .collect();
    let p = norm_sqr(&branch);
    if !(p > IMPOSSIBLE_PROBABILITY) {
        return Err(Error::ImpossibleOutcome { probability: p });
    }
    Ok((p, OscillatorState::from_amplitudes(branch)?))
}

/// Projects the oscillator onto even (`Plus`) or odd (`Minus`) number states.
/// Returns the outcome probability and the conditioned spin Bloch vector.
pub fn parity_condition(state: &JointFockState, parity: Outcome) -> Result<(f64, BlochVector)> {
    let want = match parity {
        Outcome::Plus => 0,
        Outcome::Minus => 1,
    };
    let keep = |n: usize| n % 2 == want;
    let p: f64 = (0..state.dim())
        .filter(|&n| keep(n))
        .map(|n| state.up[n].norm_sqr() + state.down[n].norm_sqr())
        .sum();
    if !(p > IMPOSSIBLE_PROBABILITY) {
        return Err(Error::ImpossibleOutcome { probability: p });
    }
    Ok((p, spin_block(&state.up, &state.down, keep)))
}

/// `M_mn = ∫_0^∞ ψ_m ψ_n dx` for `m, n < dim`.
///
/// Diagonal entries are 1/2 and entries with `m + n` even vanish off the
/// diagonal by parity. For `m ≠ n`, `ψ_n'' = (x² − 2n − 1)ψ_n` turns the
/// Wronskian `W = ψ_m ψ_n' − ψ_m' ψ_n` into an antiderivative of
/// `2(m − n) ψ_m ψ_n`, so `M_mn = −W(0) / (2(m − n))`.
pub fn half_line_overlaps(dim: usize) -> Vec<Vec<f64>> {
    let psi = hermite_wavefunctions(dim, 0.0);
    // ψ_n' = √(n/2) ψ_{n−1} − √((n+1)/2) ψ_{n+1}
    let dpsi: Vec<f64> = (0..dim)
        .map(|n| {
            let lower = if n > 0 { (n as f64 / 2.0).sqrt() * psi[n - 1] } else { 0.0 };
            lower - ((n as f64 + 1.0) / 2.0).sqrt() * psi[n + 1]
        })
        .collect();
    let mut m = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            m[i][j] = if i == j {
                0.5
            } else if (i + j) % 2 == 0 {
                0.0
            } else {
                let w = psi[i] * dpsi[j] - dpsi[i] * psi[j];
                -w / (2.0 * (i as f64 - j as f64))
            };
        }
    }
    m
}

/// Bob records only the sign of X. Returns the probability of `sign` and
/// Alice's conditioned spin Bloch vector.
pub fn sign_x_condition(state: &JointFockState, sign: Outcome) -> Result<(f64, BlochVector)> {
    let dim = state.dim();
    let half = half_line_overlaps(dim);
    let proj = |i: usize, j: usize| match sign {
        Outcome::Plus => half[i][j],
        Outcome::Minus => (if i == j { 1.0 } else { 0.0 }) - half[i][j],
    };
    // ρ_ss' = Σ_mn Π_nm a_{s,m} a_{s',n}*
    let (mut uu, mut dd, mut ud) = (0.0, 0.0, C64::new(0.0, 0.0));
    for m in 0..dim {
        for n in 0..dim {
            let w = proj(n, m);
            if w == 0.0 {
                continue;
            }
            uu += w * (state.up[m] * state.up[n].conj()).re;
            dd += w * (state.down[m] * state.down[n].conj()).re;
            ud += state.up[m] * state.down[n].conj() * w;
        }
    }
    let p = uu + dd;
    if !(p > IMPOSSIBLE_PROBABILITY) {
        return Err(Error::ImpossibleOutcome { probability: p });
    }
    Ok((p, BlochVector::from_spin_matrix(uu, dd, ud)))
}

/// Outcome-weighted Pauli variance of Alice's spin along `axis` given a
/// two-outcome measurement on the oscillator.
fn spin_inference_variance(
    state: &JointFockState,
    axis: Axis,
    condition: impl Fn(&JointFockState, Outcome) -> Result<(f64, BlochVector)>,
) -> f64 {
    Outcome::BOTH
        .iter()
        .filter_map(|&o| condition(state, o).ok())
        .map(|(p, b)| p * b.pauli_variance(axis))
        .sum()
}

/// Steering of the spin by measurements on the oscillator.
///
/// Number parity infers `σY` and the sign of X infers `σZ`. For any local
/// hidden spin state `Var σY + Var σZ = 2 − ⟨σY⟩² − ⟨σZ⟩² ≥ 1`, so an
/// inferred sum below 1 steers the spin. `lhs` is that sum, `bound` is 1.
pub fn spin_steering_witness(state: &JointFockState) -> SteeringReport {
    let by_parity = spin_inference_variance(state, Axis::Y, parity_condition);
    let by_sign = spin_inference_variance(state, Axis::Z, sign_x_condition);
    SteeringReport::new(by_parity + by_sign, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_amplitudes() {
        let c = coherent_amplitudes(0.0, 4).unwrap();
        assert_eq!(c[0], C64::new(1.0, 0.0));
        assert!(c[1..].iter().all(|z| *z == C64::new(0.0, 0.0)));
    }

    #[test]
    fn amplitude_matches_direct_formula() {
        let c = coherent_amplitudes(2.0, 40).unwrap();
        let direct = (-2.0f64).exp() * 16.0 / 24.0f64.sqrt();
        assert!((c[4].re - direct).abs() < 1e-15);
        let total: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        assert!(total >= 1.0 - 1e-12);
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(truncation_error(0.0, 1), 0.0);
        assert_eq!(truncation_error(0.0, 17), 0.0);
        assert!(truncation_error(2.0, 40) < 1e-12);
        let mut prev = 1.0;
        for d in 1..60 {
            let t = truncation_error(2.0, d);
            assert!(t <= prev);
            prev = t;
        }
        // Direct tail sum oracle at a point where it is not tiny.
        let mut direct = 0.0;
        let mut term = (-4.0f64).exp();
        for n in 0..200 {
            if n >= 5 {
                direct += term;
            }
            term *= 4.0 / (n + 1) as f64;
        }
        assert!((truncation_error(2.0, 5) - direct).abs() < 1e-14);
        for a in [0.5, 1.0, 2.0, 4.0] {
            assert!(truncation_error(a, FockConfig::for_alpha(a).dim) < MAX_TRUNCATION_ERROR);
        }
    }

    #[test]
    fn truncation_violation_is_an_error() {
        assert!(matches!(
            coherent_amplitudes(4.0, 20),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn hermite_reference_values() {
        assert!((hermite_wavefunction(0, 0.0) - 0.751126).abs() < 1e-6);
        assert_eq!(hermite_wavefunction(1, 0.0), 0.0);
        // Overflow-free at high order.
        let v = hermite_wavefunction(150, 3.0);
        assert!(v.is_finite());
    }

    #[test]
    fn hermite_normalized() {
        let h = 0.002;
        let s: f64 = (-6000..=6000)
            .map(|i| hermite_wavefunction(5, i as f64 * h).powi(2))
            .sum::<f64>()
            * h;
        assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cat_is_normalized_and_unpolarized_in_z() {
        let s = build_coherent_cat(2.0, 40).unwrap();
        let n2 = norm_sqr(s.up()) + norm_sqr(s.down());
        assert!((n2 - 1.0).abs() < 1e-14);
        assert!(s.spin_bloch().bz.abs() < 1e-14);
    }

    #[test]
    fn reduced_spin_sigma_y_tracks_overlap() {
        // ρ_↑↓ = −(i/2)⟨−α|α⟩, so ⟨σY⟩ = e^{-2α²}.
        let a = 1.0;
        let s = build_coherent_cat(a, FockConfig::for_alpha(a).dim).unwrap();
        let b = s.spin_bloch();
        assert!((b.by - (-2.0 * a * a).exp()).abs() < 1e-12);
        assert!(b.bx.abs() < 1e-14);
    }

    #[test]
    fn vacuum_densities() {
        let v = OscillatorState::vacuum(8).unwrap();
        let inv = 1.0 / PI.sqrt();
        assert!((quadrature_density(&v, Basis::X, 0.0) - inv).abs() < 1e-15);
        let c = OscillatorState::coherent(2.0, 40).unwrap();
        assert!((quadrature_density(&c, Basis::X, 2.0 * SQRT_2) - inv).abs() < 1e-12);
    }

    #[test]
    fn projection_errors_on_null_branch() {
        let v = OscillatorState::vacuum(4).unwrap();
        let s = JointFockState::product(spin_eigenvector(Axis::Z, Outcome::Plus), &v).unwrap();
        assert!(matches!(
            project_spin(&s, Axis::Z, Outcome::Minus),
            Err(Error::ImpossibleOutcome { .. })
        ));
        assert!(matches!(
            parity_condition(&s, Outcome::Minus),
            Err(Error::ImpossibleOutcome { .. })
        ));
    }

    #[test]
    fn vacuum_spin_up_parity() {
        let v = OscillatorState::vacuum(4).unwrap();
        let s = JointFockState::product(spin_eigenvector(Axis::Z, Outcome::Plus), &v).unwrap();
        let (p, b) = parity_condition(&s, Outcome::Plus).unwrap();
        assert_eq!(p, 1.0);
        assert_eq!(b.bz, 1.0);
    }

    #[test]
    fn half_line_overlaps_match_quadrature() {
        let dim = 12;
        let m = half_line_overlaps(dim);
        let h = 1e-4;
        let n_pts = 150_000;
        // Simpson on [0, 15]
        let mut num = vec![vec![0.0; dim]; dim];
        for k in 0..=n_pts {
            let x = k as f64 * h;
            let w = if k == 0 || k == n_pts { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            let psi = hermite_wavefunctions(dim - 1, x);
            for i in 0..dim {
                for j in 0..dim {
                    num[i][j] += w * psi[i] * psi[j] * h / 3.0;
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                assert!((m[i][j] - num[i][j]).abs() < 1e-10, "({i},{j}) {} vs {}", m[i][j], num[i][j]);
            }
        }
    }

    #[test]
    fn sign_condition_completeness() {
        let s = build_coherent_cat(1.0, FockConfig::for_alpha(1.0).dim).unwrap();
        let (p1, b1) = sign_x_condition(&s, Outcome::Plus).unwrap();
        let (p2, b2) = sign_x_condition(&s, Outcome::Minus).unwrap();
        assert!((p1 + p2 - 1.0).abs() < 1e-12);
        assert!((p1 - 0.5).abs() < 1e-12);
        // X > 0 favours the |α⟩|↑⟩ branch.
        assert!(b1.bz > 0.9 && b2.bz < -0.9);
        assert!(b1.length() <= 1.0 + 1e-12);
    }

    #[test]
    fn parity_steers_sigma_y_exactly() {
        let s = build_coherent_cat(2.0, 40).unwrap();
        let (pe, be) = parity_condition(&s, Outcome::Plus).unwrap();
        let (po, bo) = parity_condition(&s, Outcome::Minus).unwrap();
        assert!((pe + po - 1.0).abs() < 1e-12);
        assert!((be.length() - 1.0).abs() < 1e-12);
        assert!((be.by - 1.0).abs() < 1e-12);
        assert!((bo.by + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_witness_product_state() {
        let v = OscillatorState::vacuum(20).unwrap();
        let spin = [C64::from_polar(FRAC_1_SQRT_2, -PI / 4.0), C64::from_polar(FRAC_1_SQRT_2, PI / 4.0)];
        let s = JointFockState::product(spin, &v).unwrap();
        let r = spin_steering_witness(&s);
        assert!(!r.violated);
        assert!(r.lhs >= 0.0);
        let s0 = build_coherent_cat(0.0, 20).unwrap();
        assert!(!spin_steering_witness(&s0).violated);
    }

    #[test]
    fn spin_witness_cat_regression() {
        let s = build_coherent_cat(2.0, 40).unwrap();
        let r = spin_steering_witness(&s);
        assert!(r.violated);
        assert_eq!(r.bound, 1.0);
        // Parity infers σY exactly; the σZ error is the x < 0 tail of the
        // |α⟩ hill, p = erfc(2√2)/2, giving 4p(1 − p).
        assert!((r.lhs - 1.266_809_550_620_751e-4).abs() < 1e-12, "lhs = {:e}", r.lhs);
    }
}
