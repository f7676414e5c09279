//! Dense state-vector model of the GHZ realisation
//! `(|↑⟩^{⊗N} − |↓⟩^{⊗N})/√2`, split into Alice's spin (qubit N) and Bob's
//! N−1 "cat" spins.
//!
//! Qubit `k` (1-based) is bit `k − 1` of the basis index and bit value 0 is
//! `|↑⟩`, so all-up is index 0 and all-down is index `2^N − 1`.
//!
//! Units: the collective spin `σ_Z^B` is reported in spin-1/2 units, each of
//! Bob's qubits contributing ±1/2, so its outcomes run over
//! `−(N−1)/2 ..= (N−1)/2`. The product observables
//! `Pr_Y^B = Π_k σ_Y^(k)` and `Pr_Y^B(J) = σ_X^(J) Π_{k≠J} σ_Y^(k)` keep Pauli
//! eigenvalues ±1. With these units `[σ_Z^B, Pr_Y^B] = −i Σ_J Pr_Y^B(J)`, which
//! gives the uncertainty relation
//! `Δ(σ_Z^B)·Δ(Pr_Y^B) ≥ |⟨Σ_J Pr_Y^B(J)⟩|/2`.
//!
//! Which of Alice's transverse settings makes `Pr_Y^B` definite depends on
//! N: tracing the `i^{N−1}` phase that `Pr_Y^B` picks up between the two GHZ
//! branches shows that σX does so when N−1 is even and σY when N−1 is odd;
//! the other setting then makes every `Pr_Y^B(J)` definite. See
//! [`transverse_settings`].

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::fock_oracle::{spin_eigenvector, IMPOSSIBLE_PROBABILITY};
use crate::steering::{product_witness, SteeringReport};
use crate::{Axis, Error, MomentSummary, Outcome, Result};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 24;

// Below this many amplitudes Pauli application stays on one thread.
const PAR_THRESHOLD: usize = 1 << 14;

/// Dense pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

/// The full N-qubit GHZ state.
pub type GhzState = StateVector;

impl StateVector {
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::SizeCap { n, min: 1, max: MAX_QUBITS });
        }
        let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !(n2 > IMPOSSIBLE_PROBABILITY) {
            return Err(Error::ImpossibleOutcome { probability: n2 });
        }
        let s = 1.0 / n2.sqrt();
        Ok(Self {
            n,
            amps: amps.into_iter().map(|z| z * s).collect(),
        })
    }

    /// Computational basis state; `ups[k]` sets qubit `k + 1` to `|↑⟩`.
    pub fn basis_state(ups: &[bool]) -> Result<Self> {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << ups.len()];
        let idx = ups
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &up)| if up { acc } else { acc | (1 << k) });
        amps[idx] = C64::new(1.0, 0.0);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

pub fn build_ghz(n: usize) -> Result<GhzState> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::SizeCap { n, min: MIN_QUBITS, max: MAX_QUBITS });
    }
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = C64::new(-FRAC_1_SQRT_2, 0.0);
    Ok(StateVector { n, amps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of single-qubit Paulis; `ops[k]` acts on qubit `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self { ops }
    }

    pub fn identity(n: usize) -> Self {
        Self { ops: vec![Pauli::I; n] }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// `Pr_Y^B = Π_k σ_Y^(k)` on `m` qubits.
    pub fn pr_y(m: usize) -> Self {
        Self { ops: vec![Pauli::Y; m] }
    }

    /// `Pr_Y^B(J)`: σ_X on qubit `j` (1-based), σ_Y on the rest.
    pub fn pr_y_j(m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::IndexOutOfRange { index: j, max: m });
        }
        let mut s = Self::pr_y(m);
        s.ops[j - 1] = Pauli::X;
        Ok(s)
    }

    /// Bit masks: qubits flipped (X or Y), qubits with a Z-type sign (Z or
    /// Y), and the number of Y factors.
    fn masks(&self) -> (usize, usize, usize) {
        let (mut flip, mut sign, mut ny) = (0usize, 0usize, 0usize);
        for (k, op) in self.ops.iter().enumerate() {
            match op {
                Pauli::I => {}
                Pauli::X => flip |= 1 << k,
                Pauli::Z => sign |= 1 << k,
                Pauli::Y => {
                    flip |= 1 << k;
                    sign |= 1 << k;
                    ny += 1;
                }
            }
        }
        (flip, sign, ny)
    }

    /// `P|ψ⟩`, matrix-free. On basis state `i`, `X` flips the bit,
    /// `Z` gives `(−1)^bit` and `Y = iXZ` gives `i(−1)^bit` with a flip.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.len() != state.n {
            return Err(Error::LengthMismatch { expected: state.n, got: self.len() });
        }
        let (flip, sign, ny) = self.masks();
        let global = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, -1.0),
        ][ny % 4];
        let mut out = vec![C64::new(0.0, 0.0); state.amps.len()];
        let fill = |(i, slot): (usize, &mut C64)| {
            let src = i ^ flip;
            let phase = if (src & sign).count_ones() % 2 == 0 { global } else { -global };
            *slot = phase * state.amps[src];
        };
        if out.len() >= PAR_THRESHOLD {
            out.par_iter_mut().enumerate().for_each(fill);
        } else {
            out.iter_mut().enumerate().for_each(fill);
        }
        Ok(StateVector { n: state.n, amps: out })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            f.write_str(match op {
                Pauli::I => "I",
                Pauli::X => "X",
                Pauli::Y => "Y",
                Pauli::Z => "Z",
            })?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::InvalidParameter(format!("bad Pauli symbol {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString::new)
    }
}

/// `⟨ψ|P|ψ⟩`; real for Pauli strings.
pub fn expectation(state: &StateVector, ps: &PauliString) -> Result<f64> {
    let applied = ps.apply(state)?;
    let v: C64 = state
        .amps
        .iter()
        .zip(&applied.amps)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(v.re)
}

/// Alice measures qubit N along `axis`. Returns the outcome probability and
/// Bob's renormalized (N−1)-qubit state.
pub fn alice_condition(
    state: &StateVector,
    axis: Axis,
    outcome: Outcome,
) -> Result<(f64, StateVector)> {
    if state.n < 2 {
        return Err(Error::SizeCap { n: state.n, min: 2, max: MAX_QUBITS });
    }
    let e = spin_eigenvector(axis, outcome);
    let (eu, ed) = (e[0].conj(), e[1].conj());
    let half = 1usize << (state.n - 1);
    let branch: Vec<C64> = (0..half)
        .map(|i| eu * state.amps[i] + ed * state.amps[i | half])
        .collect();
    let p: f64 = branch.iter().map(|z| z.norm_sqr()).sum();
    if !(p > IMPOSSIBLE_PROBABILITY) {
        return Err(Error::ImpossibleOutcome { probability: p });
    }
    Ok((p, StateVector::from_amplitudes(branch)?))
}

/// Distribution of `σ_Z^B` in spin-1/2 units.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveSpinDist {
    pub support: Vec<f64>,
    pub probabilities: Vec<f64>,
}

impl CollectiveSpinDist {
    pub fn moments(&self) -> MomentSummary {
        let mean: f64 = self.support.iter().zip(&self.probabilities).map(|(s, p)| s * p).sum();
        let variance = self
            .support
            .iter()
            .zip(&self.probabilities)
            .map(|(s, p)| p * (s - mean).powi(2))
            .sum();
        MomentSummary { mean, variance }
    }
}

pub fn collective_sz_dist(cond: &StateVector) -> CollectiveSpinDist {
    let m = cond.n;
    let mut probabilities = vec![0.0; m + 1];
    for (i, a) in cond.amps.iter().enumerate() {
        // number of up spins
        let ups = m - i.count_ones() as usize;
        probabilities[ups] += a.norm_sqr();
    }
    let support = (0..=m).map(|ups| ups as f64 - m as f64 / 2.0).collect();
    CollectiveSpinDist { support, probabilities }
}

/// Mean and variance of `Pr_Y^B`; the variance is `1 − ⟨Pr_Y^B⟩²` since the
/// observable squares to the identity.
pub fn pr_y(cond: &StateVector) -> MomentSummary {
    let mean = expectation(cond, &PauliString::pr_y(cond.n)).expect("matching length");
    MomentSummary {
        mean,
        variance: (1.0 - mean * mean).max(0.0),
    }
}

/// `⟨Pr_Y^B(J)⟩` for 1-based `j`.
pub fn pr_y_j(cond: &StateVector, j: usize) -> Result<f64> {
    expectation(cond, &PauliString::pr_y_j(cond.n, j)?)
}

/// `|⟨Σ_J Pr_Y^B(J)⟩|/2`, the right side of the collective uncertainty
/// relation.
pub fn ur_bound(cond: &StateVector) -> f64 {
    let total: f64 = (1..=cond.n)
        .map(|j| pr_y_j(cond, j).expect("index in range"))
        .sum();
    total.abs() / 2.0
}

/// Alice's settings paired with `Pr_Y^B` and with the `Pr_Y^B(J)` family for
/// an N-qubit GHZ state: `(σX, σY)` when N−1 is even, `(σY, σX)` when odd.
pub fn transverse_settings(n: usize) -> (Axis, Axis) {
    if (n - 1).is_multiple_of(2) {
        (Axis::X, Axis::Y)
    } else {
        (Axis::Y, Axis::X)
    }
}

/// Per-outcome conditional statistics behind the GHZ witness.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzWitness {
    pub n: usize,
    pub report: SteeringReport,
    pub var_inf_sz: f64,
    pub var_inf_pr_y: f64,
    /// Setting used to infer `Pr_Y^B`.
    pub pr_y_setting: Axis,
    /// Setting used to infer the `Pr_Y^B(J)` family.
    pub pr_y_j_setting: Axis,
    /// `⟨Pr_Y^B⟩` given Alice's `+1` and `−1` results on `pr_y_setting`.
    pub pr_y_values: [f64; 2],
    /// `⟨Pr_Y^B(J)⟩`, `J = 1..N−1`, given Alice's `+1` and `−1` results on
    /// `pr_y_j_setting`.
    pub pr_y_j_values: [Vec<f64>; 2],
}

fn inferred<T>(
    state: &StateVector,
    axis: Axis,
    f: impl Fn(&StateVector) -> T,
) -> Result<Vec<(f64, T)>> {
    Outcome::BOTH
        .iter()
        .map(|&o| alice_condition(state, axis, o).map(|(p, c)| (p, f(&c))))
        .collect()
}

/// Inference variances of `σ_Z^B` (Alice σZ) and `Pr_Y^B`, multiplied and
/// compared with the bound inferred from the `Pr_Y^B(J)` family. Alice's
/// transverse settings follow [`transverse_settings`].
pub fn ghz_steering_witness(n: usize) -> Result<GhzWitness> {
    if !(3..=MAX_QUBITS).contains(&n) {
        return Err(Error::SizeCap { n, min: 3, max: MAX_QUBITS });
    }
    let state = build_ghz(n)?;
    ghz_witness_from_state(&state, 0.0)
}

/// Witness evaluation for an arbitrary N-qubit state, with `floor` added to
/// each inference variance (a smearing of Bob's outcomes by `√floor` units).
pub fn ghz_witness_from_state(state: &StateVector, floor: f64) -> Result<GhzWitness> {
    let n = state.n_qubits();
    let (pr_setting, prj_setting) = transverse_settings(n);

    let sz = inferred(state, Axis::Z, |c| collective_sz_dist(c).moments().variance)?;
    let var_inf_sz: f64 = sz.iter().map(|(p, v)| p * v).sum();

    let pr = inferred(state, pr_setting, pr_y)?;
    let var_inf_pr_y: f64 = pr.iter().map(|(p, m)| p * m.variance).sum();

    let prj = inferred(state, prj_setting, |c| {
        (1..=c.n_qubits())
            .map(|j| pr_y_j(c, j).expect("index in range"))
            .collect::<Vec<f64>>()
    })?;
    let bound: f64 = prj
        .iter()
        .map(|(p, vals)| p * vals.iter().sum::<f64>().abs() / 2.0)
        .sum();

    let report = product_witness(var_inf_sz + floor, var_inf_pr_y + floor, bound)?;
    let [a, b] = [&prj[0].1, &prj[1].1];
    Ok(GhzWitness {
        n,
        report,
        var_inf_sz,
        var_inf_pr_y,
        pr_y_setting: pr_setting,
        pr_y_j_setting: prj_setting,
        pr_y_values: [pr[0].1.mean, pr[1].1.mean],
        pr_y_j_values: [a.clone(), b.clone()],
    })
}

/// Same statistics without conditioning on Alice: Bob's reduced-state
/// variances and bound.
pub fn unconditioned_witness(n: usize) -> Result<SteeringReport> {
    let state = build_ghz(n)?;
    // Averaging over σZ outcomes gives Bob's reduced state.
    let branches = inferred(&state, Axis::Z, |c| c.clone())?;
    let mix = |f: &dyn Fn(&StateVector) -> f64| branches.iter().map(|(p, c)| p * f(c)).sum::<f64>();
    let m = n - 1;
    let sz_mean = mix(&|c| collective_sz_dist(c).moments().mean);
    let sz_second = mix(&|c| {
        let d = collective_sz_dist(c);
        d.support.iter().zip(&d.probabilities).map(|(s, p)| p * s * s).sum()
    });
    let pr_mean = mix(&|c| expectation(c, &PauliString::pr_y(m)).expect("length"));
    let sum_j = mix(&|c| {
        (1..=m).map(|j| pr_y_j(c, j).expect("index")).sum()
    });
    product_witness(
        (sz_second - sz_mean * sz_mean).max(0.0),
        (1.0 - pr_mean * pr_mean).max(0.0),
        sum_j.abs() / 2.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn ghz_layout() {
        let g = build_ghz(2).unwrap();
        assert_eq!(g.amplitudes()[0], C64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(g.amplitudes()[3], C64::new(-FRAC_1_SQRT_2, 0.0));
        let g = build_ghz(3).unwrap();
        let nz: Vec<usize> = (0..8).filter(|&i| g.amplitudes()[i].norm() > 0.0).collect();
        assert_eq!(nz, vec![0, 7]);
        assert!(close(g.norm_sqr(), 1.0));
        assert!(build_ghz(1).is_err());
        assert!(build_ghz(25).is_err());
    }

    #[test]
    fn pauli_parse_roundtrip() {
        let p: PauliString = "iXyZ".parse().unwrap();
        assert_eq!(p.to_string(), "IXYZ");
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn ghz3_expectations() {
        let g = build_ghz(3).unwrap();
        assert!(close(expectation(&g, &"ZZZ".parse().unwrap()).unwrap(), 0.0));
        assert!(close(expectation(&g, &"YYX".parse().unwrap()).unwrap(), 1.0));
        assert!(close(expectation(&g, &"III".parse().unwrap()).unwrap(), 1.0));
        assert!(matches!(
            expectation(&g, &"XX".parse().unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn z_conditioning_gives_alive_and_dead() {
        let g = build_ghz(3).unwrap();
        let (p, c) = alice_condition(&g, Axis::Z, Outcome::Plus).unwrap();
        assert!(close(p, 0.5));
        assert_eq!(c, StateVector::basis_state(&[true, true]).unwrap());
        let (p, c) = alice_condition(&g, Axis::Z, Outcome::Minus).unwrap();
        assert!(close(p, 0.5));
        // Global phase −1 relative to |↓↓⟩.
        assert!(close(c.amplitudes()[3].norm(), 1.0));
    }

    #[test]
    fn collective_distributions() {
        let up = StateVector::basis_state(&[true, true]).unwrap();
        let d = collective_sz_dist(&up);
        assert_eq!(d.support, vec![-1.0, 0.0, 1.0]);
        assert_eq!(d.probabilities, vec![0.0, 0.0, 1.0]);
        let down = StateVector::basis_state(&[false, false]).unwrap();
        assert_eq!(collective_sz_dist(&down).probabilities, vec![1.0, 0.0, 0.0]);
        let mut a = vec![C64::new(0.0, 0.0); 4];
        a[0] = C64::new(1.0, 0.0);
        a[3] = C64::new(1.0, 0.0);
        let sup = StateVector::from_amplitudes(a).unwrap();
        let d = collective_sz_dist(&sup);
        assert!(close(d.probabilities[0], 0.5) && close(d.probabilities[2], 0.5));
    }

    #[test]
    fn pr_y_on_conditioned_states() {
        let g = build_ghz(3).unwrap();
        for o in Outcome::BOTH {
            let (_, c) = alice_condition(&g, Axis::X, o).unwrap();
            let m = pr_y(&c);
            assert!(close(m.mean.abs(), 1.0));
            assert!(close(m.variance, 0.0));
        }
        let (_, alive) = alice_condition(&g, Axis::Z, Outcome::Plus).unwrap();
        let m = pr_y(&alive);
        assert!(close(m.mean, 0.0) && close(m.variance, 1.0));
        assert!(matches!(pr_y_j(&alive, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(pr_y_j(&alive, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn pr_y_j_definite_on_partner_setting() {
        for n in [3, 4, 5] {
            let g = build_ghz(n).unwrap();
            let (_, prj_axis) = transverse_settings(n);
            for o in Outcome::BOTH {
                let (_, c) = alice_condition(&g, prj_axis, o).unwrap();
                let vals: Vec<f64> = (1..n).map(|j| pr_y_j(&c, j).unwrap()).collect();
                assert!(vals.iter().all(|v| close(v.abs(), 1.0)), "n={n}: {vals:?}");
                assert!(vals.iter().all(|v| close(*v, vals[0])));
            }
        }
    }

    #[test]
    fn ur_bound_cases() {
        let g = build_ghz(3).unwrap();
        // σX-conditioned GHZ(3): the XY-type terms vanish.
        let (_, cx) = alice_condition(&g, Axis::X, Outcome::Plus).unwrap();
        assert!(close(ur_bound(&cx), 0.0));
        let (_, cy) = alice_condition(&g, Axis::Y, Outcome::Plus).unwrap();
        assert!(close(ur_bound(&cy), 1.0));
    }

    #[test]
    fn witness_small_n() {
        for n in [3, 4] {
            let w = ghz_steering_witness(n).unwrap();
            assert!(close(w.var_inf_sz, 0.0));
            assert!(close(w.var_inf_pr_y, 0.0));
            assert!(close(w.report.bound, (n as f64 - 1.0) / 2.0));
            assert!(w.report.violated);
        }
        assert!(ghz_steering_witness(2).is_err());
    }

    #[test]
    fn unconditioned_does_not_violate() {
        let r = unconditioned_witness(3).unwrap();
        assert!(close(r.bound, 0.0));
        assert!(!r.violated);
    }
}
