//! Finite-shot simulated experiments.
//!
//! Every shot draws Alice's outcome by the Born rule and then one value of
//! Bob's chosen observable from the exact conditional distribution.
//!
//! Randomness: ChaCha8 (`rand_chacha::ChaCha8Rng`). The user seed is expanded
//! by `seed_from_u64`, and each block of [`BLOCK_SHOTS`] shots of plan entry
//! `e` runs on its own ChaCha stream `(e << 32) | block`, so blocks are
//! sampled in parallel and the output is identical for any thread count.
//! Bootstrap replicate `r` uses stream `r` of a generator seeded the same way
//! from the estimator seed.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic_cat::{outcome_probability, tabulate, CatState};
use crate::ghz_sim::{
    alice_condition, build_ghz, collective_sz_dist, expectation, transverse_settings,
    PauliString, MAX_QUBITS,
};
use crate::steering::QUADRATURE_BOUND;
use crate::{Axis, Error, Outcome, Result};

pub const BLOCK_SHOTS: usize = 4096;
pub const DEFAULT_RESAMPLES: usize = 200;
/// Minimum records per (setting, observable, outcome) cell for estimation.
pub const MIN_CELL_RECORDS: usize = 10;

/// Observable Bob measures on the cat system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BobObservable {
    /// Oscillator quadrature X.
    X,
    /// Oscillator quadrature P.
    P,
    /// Collective `σ_Z^B`, spin-1/2 units.
    SzB,
    /// `Π_k σ_Y^(k)`.
    PrY,
    /// `Pr_Y^B(J)`, 1-based J.
    PrYJ(usize),
}

impl fmt::Display for BobObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BobObservable::X => f.write_str("x"),
            BobObservable::P => f.write_str("p"),
            BobObservable::SzB => f.write_str("sz_b"),
            BobObservable::PrY => f.write_str("pr_y"),
            BobObservable::PrYJ(j) => write!(f, "pr_y_j{j}"),
        }
    }
}

impl FromStr for BobObservable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "x" => BobObservable::X,
            "p" => BobObservable::P,
            "sz_b" => BobObservable::SzB,
            "pr_y" => BobObservable::PrY,
            _ => match s.strip_prefix("pr_y_j").and_then(|j| j.parse().ok()) {
                Some(j) if j > 0 => BobObservable::PrYJ(j),
                _ => return Err(Error::InvalidParameter(format!("unknown observable {s:?}"))),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub alice_setting: Axis,
    pub bob_observable: BobObservable,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub shots: usize,
    pub seed: u64,
    pub settings_plan: Vec<PlanEntry>,
}

impl SampleConfig {
    pub fn new(shots: usize, seed: u64, settings_plan: Vec<PlanEntry>) -> Result<Self> {
        if shots == 0 {
            return Err(Error::InvalidParameter("shots must be > 0".into()));
        }
        if settings_plan.is_empty() || settings_plan.iter().any(|e| !(e.fraction >= 0.0)) {
            return Err(Error::InvalidParameter("plan needs non-negative fractions".into()));
        }
        let total: f64 = settings_plan.iter().map(|e| e.fraction).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("plan fractions sum to {total}, not 1")));
        }
        Ok(Self { shots, seed, settings_plan })
    }

    /// Half the shots on σZ/X, half on σX/P.
    pub fn coherent(shots: usize, seed: u64) -> Result<Self> {
        Self::new(
            shots,
            seed,
            vec![
                PlanEntry { alice_setting: Axis::Z, bob_observable: BobObservable::X, fraction: 0.5 },
                PlanEntry { alice_setting: Axis::X, bob_observable: BobObservable::P, fraction: 0.5 },
            ],
        )
    }

    /// A third of the shots each on σZ/σ_Z^B, the `Pr_Y^B` pairing and the
    /// `Pr_Y^B(J)` family (split evenly over J).
    pub fn ghz(n: usize, shots: usize, seed: u64) -> Result<Self> {
        if !(3..=MAX_QUBITS).contains(&n) {
            return Err(Error::SizeCap { n, min: 3, max: MAX_QUBITS });
        }
        let (pr_axis, prj_axis) = transverse_settings(n);
        let m = n - 1;
        let mut plan = vec![
            PlanEntry { alice_setting: Axis::Z, bob_observable: BobObservable::SzB, fraction: 1.0 / 3.0 },
            PlanEntry { alice_setting: pr_axis, bob_observable: BobObservable::PrY, fraction: 1.0 / 3.0 },
        ];
        for j in 1..=m {
            plan.push(PlanEntry {
                alice_setting: prj_axis,
                bob_observable: BobObservable::PrYJ(j),
                fraction: 1.0 / (3.0 * m as f64),
            });
        }
        // Absorb rounding so the fractions sum to 1 within 1e-12.
        let total: f64 = plan.iter().map(|e| e.fraction).sum();
        plan[0].fraction += 1.0 - total;
        Self::new(shots, seed, plan)
    }

    /// Shots per plan entry: floors of `fraction·shots`, with the remainder
    /// handed out one at a time in plan order.
    pub fn allocation(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self
            .settings_plan
            .iter()
            .map(|e| (e.fraction * self.shots as f64).floor() as usize)
            .collect();
        let mut left = self.shots.saturating_sub(counts.iter().sum());
        let (mut i, len) = (0, counts.len());
        while left > 0 {
            counts[i % len] += 1;
            left -= 1;
            i += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub alice_setting: Axis,
    pub alice_outcome: Outcome,
    pub bob_observable: BobObservable,
    pub bob_value: f64,
}

fn block_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `Plus` with probability `p_plus`.
fn draw_outcome(rng: &mut ChaCha8Rng, p_plus: f64) -> Outcome {
    if rng.random::<f64>() < p_plus {
        Outcome::Plus
    } else {
        Outcome::Minus
    }
}

/// Runs every plan entry in blocks on independent streams and concatenates
/// the blocks in (entry, block) order.
fn run_blocks<F>(cfg: &SampleConfig, shot: F) -> Result<Vec<SampleRecord>>
where
    F: Fn(usize, &mut ChaCha8Rng) -> SampleRecord + Sync,
{
    let counts = cfg.allocation();
    let mut jobs = Vec::new();
    for (e, &count) in counts.iter().enumerate() {
        let blocks = count.div_ceil(BLOCK_SHOTS);
        for b in 0..blocks {
            let len = BLOCK_SHOTS.min(count - b * BLOCK_SHOTS);
            jobs.push((e, b, len));
        }
    }
    let chunks: Vec<Vec<SampleRecord>> = jobs
        .par_iter()
        .map(|&(e, b, len)| {
            let mut rng = block_rng(cfg.seed, ((e as u64) << 32) | b as u64);
            (0..len).map(|_| shot(e, &mut rng)).collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Inverse-CDF table for one X-basis conditional density.
struct InverseCdf {
    xs: Vec<f64>,
    cdf: Vec<f64>,
}

impl InverseCdf {
    fn new(xs: Vec<f64>, densities: &[f64]) -> Self {
        let mut cdf = Vec::with_capacity(xs.len());
        let mut acc = 0.0;
        cdf.push(0.0);
        for i in 1..xs.len() {
            acc += 0.5 * (densities[i] + densities[i - 1]) * (xs[i] - xs[i - 1]);
            cdf.push(acc);
        }
        cdf.iter_mut().for_each(|c| *c /= acc);
        Self { xs, cdf }
    }

    fn sample(&self, u: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < u).clamp(1, self.cdf.len() - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let t = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
        self.xs[i - 1] + t * (self.xs[i] - self.xs[i - 1])
    }
}

/// Samples the coherent cat. X values come from an inverse CDF on the default
/// X grid; P values by rejection from the envelope `(2/√π)e^{-p²}` with
/// acceptance `(1 ± sin(2√2αp))/2`.
pub fn sample_coherent_cat(cat: CatState, cfg: &SampleConfig) -> Result<Vec<SampleRecord>> {
    for e in &cfg.settings_plan {
        let ok = matches!(
            (e.alice_setting, e.bob_observable),
            (Axis::Z, BobObservable::X) | (Axis::X, BobObservable::P)
        );
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "coherent cat plan entry {}/{} is not supported",
                e.alice_setting, e.bob_observable
            )));
        }
    }
    let tables: BTreeMap<Outcome, InverseCdf> = Outcome::BOTH
        .iter()
        .map(|&o| {
            let d = tabulate(cat, Axis::Z, o, cat.default_x_grid())?;
            Ok((o, InverseCdf::new(d.coordinates().collect(), &d.densities)))
        })
        .collect::<Result<_>>()?;
    let mut p_plus = Vec::new();
    for e in &cfg.settings_plan {
        p_plus.push(outcome_probability(cat, e.alice_setting, Outcome::Plus)?);
    }
    let envelope = Normal::new(0.0, FRAC_1_SQRT_2).expect("valid normal");
    let k = 2.0 * SQRT_2 * cat.alpha();

    run_blocks(cfg, |e, rng| {
        let entry = cfg.settings_plan[e];
        let outcome = draw_outcome(rng, p_plus[e]);
        let bob_value = match entry.bob_observable {
            BobObservable::X => tables[&outcome].sample(rng.random::<f64>()),
            _ => {
                let s = outcome.sign();
                loop {
                    let p: f64 = envelope.sample(rng);
                    let accept = 0.5 * (1.0 + s * (k * p).sin());
                    if rng.random::<f64>() < accept {
                        break p;
                    }
                }
            }
        };
        SampleRecord {
            alice_setting: entry.alice_setting,
            alice_outcome: outcome,
            bob_observable: entry.bob_observable,
            bob_value,
        }
    })
}

/// Exact conditional distribution of one Bob observable: values and
/// probabilities, per Alice outcome.
struct DiscreteCond {
    p_plus: f64,
    dists: [(Vec<f64>, Vec<f64>); 2],
}

fn sample_discrete(rng: &mut ChaCha8Rng, values: &[f64], probs: &[f64]) -> f64 {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (v, p) in values.iter().zip(probs) {
        acc += p;
        if u < acc {
            return *v;
        }
    }
    // u landed in the rounding gap above the last cumulative sum.
    values
        .iter()
        .zip(probs)
        .rev()
        .find(|(_, &p)| p > 0.0)
        .map(|(v, _)| *v)
        .unwrap_or(values[values.len() - 1])
}

/// Samples the N-qubit GHZ state under the given plan.
pub fn sample_ghz(n: usize, cfg: &SampleConfig) -> Result<Vec<SampleRecord>> {
    if !(3..=MAX_QUBITS).contains(&n) {
        return Err(Error::SizeCap { n, min: 3, max: MAX_QUBITS });
    }
    let state = build_ghz(n)?;
    let m = n - 1;
    let conds = cfg
        .settings_plan
        .iter()
        .map(|e| {
            let mut p_plus = 0.0;
            let mut dists: [(Vec<f64>, Vec<f64>); 2] = Default::default();
            for (slot, &o) in Outcome::BOTH.iter().enumerate() {
                let (p, c) = match alice_condition(&state, e.alice_setting, o) {
                    Ok(v) => v,
                    Err(Error::ImpossibleOutcome { .. }) => continue,
                    Err(err) => return Err(err),
                };
                if o == Outcome::Plus {
                    p_plus = p;
                }
                dists[slot] = match e.bob_observable {
                    BobObservable::SzB => {
                        let d = collective_sz_dist(&c);
                        (d.support, d.probabilities)
                    }
                    BobObservable::PrY | BobObservable::PrYJ(_) => {
                        let ps = match e.bob_observable {
                            BobObservable::PrYJ(j) => PauliString::pr_y_j(m, j)?,
                            _ => PauliString::pr_y(m),
                        };
                        let mean = expectation(&c, &ps)?;
                        let up = (0.5 * (1.0 + mean)).clamp(0.0, 1.0);
                        (vec![1.0, -1.0], vec![up, 1.0 - up])
                    }
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "observable {other} is not defined for spins"
                        )))
                    }
                };
            }
            Ok(DiscreteCond { p_plus, dists })
        })
        .collect::<Result<Vec<_>>>()?;

    run_blocks(cfg, |e, rng| {
        let entry = cfg.settings_plan[e];
        let outcome = draw_outcome(rng, conds[e].p_plus);
        let (vals, probs) = &conds[e].dists[if outcome == Outcome::Plus { 0 } else { 1 }];
        SampleRecord {
            alice_setting: entry.alice_setting,
            alice_outcome: outcome,
            bob_observable: entry.bob_observable,
            bob_value: sample_discrete(rng, vals, probs),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub witness_lhs: f64,
    pub bound: f64,
    pub stderr_lhs: f64,
    pub violated_at_3sigma: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    pub resamples: usize,
    pub seed: u64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            resamples: DEFAULT_RESAMPLES,
            seed: 0,
        }
    }
}

type GroupKey = (Axis, BobObservable);

/// Records of one (setting, observable) pair, split by Alice outcome.
#[derive(Debug, Clone, Default)]
struct Group {
    plus: Vec<f64>,
    minus: Vec<f64>,
}

impl Group {
    fn cells(&self) -> [(&'static str, &Vec<f64>); 2] {
        [("+1", &self.plus), ("-1", &self.minus)]
    }

    fn total(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    /// `Σ_o (n_o/n)·s²_o` with unbiased cell variances.
    fn inference_variance(&self) -> f64 {
        let n = self.total() as f64;
        self.cells()
            .iter()
            .map(|(_, v)| {
                let k = v.len() as f64;
                let mean = v.iter().sum::<f64>() / k;
                let ss: f64 = v.iter().map(|x| (x - mean).powi(2)).sum();
                (k / n) * ss / (k - 1.0)
            })
            .sum()
    }

    /// `(n_o/n, mean_o)` for each Alice outcome.
    fn outcome_means(&self) -> [(f64, f64); 2] {
        let n = self.total() as f64;
        let f = |v: &Vec<f64>| (v.len() as f64 / n, v.iter().sum::<f64>() / v.len() as f64);
        [f(&self.plus), f(&self.minus)]
    }

    fn resample(&self, rng: &mut ChaCha8Rng) -> Group {
        let pick = |v: &Vec<f64>, rng: &mut ChaCha8Rng| {
            (0..v.len()).map(|_| v[rng.random_range(0..v.len())]).collect()
        };
        Group {
            plus: pick(&self.plus, rng),
            minus: pick(&self.minus, rng),
        }
    }
}

enum Realisation {
    Coherent,
    Ghz { m: usize },
}

fn group_records(records: &[SampleRecord]) -> (BTreeMap<GroupKey, Group>, Realisation) {
    let mut groups: BTreeMap<GroupKey, Group> = BTreeMap::new();
    let mut max_j = 0;
    let mut quad = false;
    for r in records {
        let g = groups.entry((r.alice_setting, r.bob_observable)).or_default();
        match r.alice_outcome {
            Outcome::Plus => g.plus.push(r.bob_value),
            Outcome::Minus => g.minus.push(r.bob_value),
        }
        match r.bob_observable {
            BobObservable::X | BobObservable::P => quad = true,
            BobObservable::PrYJ(j) => max_j = max_j.max(j),
            _ => {}
        }
    }
    let kind = if quad { Realisation::Coherent } else { Realisation::Ghz { m: max_j } };
    (groups, kind)
}

/// Keys of the groups that enter the witness: (first variance, second
/// variance, bound family).
fn required_keys(
    groups: &BTreeMap<GroupKey, Group>,
    kind: &Realisation,
) -> Result<(GroupKey, GroupKey, Vec<GroupKey>)> {
    let find = |obs: BobObservable, preferred: Axis| -> Result<GroupKey> {
        if groups.contains_key(&(preferred, obs)) {
            return Ok((preferred, obs));
        }
        groups
            .keys()
            .find(|k| k.1 == obs)
            .copied()
            .ok_or_else(|| Error::InsufficientRecords {
                cell: format!("*/{obs}"),
                count: 0,
                needed: MIN_CELL_RECORDS,
            })
    };
    match *kind {
        Realisation::Coherent => Ok((
            find(BobObservable::X, Axis::Z)?,
            find(BobObservable::P, Axis::X)?,
            Vec::new(),
        )),
        Realisation::Ghz { m } => {
            if m == 0 {
                return Err(Error::InsufficientRecords {
                    cell: "*/pr_y_j*".into(),
                    count: 0,
                    needed: MIN_CELL_RECORDS,
                });
            }
            let n = m + 1;
            let (pr_axis, prj_axis) = transverse_settings(n);
            let family = (1..=m)
                .map(|j| find(BobObservable::PrYJ(j), prj_axis))
                .collect::<Result<Vec<_>>>()?;
            Ok((find(BobObservable::SzB, Axis::Z)?, find(BobObservable::PrY, pr_axis)?, family))
        }
    }
}

fn statistic(
    groups: &BTreeMap<GroupKey, Group>,
    a: &GroupKey,
    b: &GroupKey,
    family: &[GroupKey],
) -> (f64, f64) {
    let lhs = (groups[a].inference_variance() * groups[b].inference_variance()).sqrt();
    let bound = if family.is_empty() {
        QUADRATURE_BOUND
    } else {
        // Σ_o P(o) |Σ_J ⟨Pr_Y^B(J)|o⟩| / 2, P(o) pooled over the family.
        let mut per_outcome = [0.0f64; 2];
        let mut weight = [0.0f64; 2];
        for k in family {
            for (i, (w, mean)) in groups[k].outcome_means().into_iter().enumerate() {
                per_outcome[i] += mean;
                weight[i] += w / family.len() as f64;
            }
        }
        (0..2).map(|i| weight[i] * per_outcome[i].abs() / 2.0).sum()
    };
    (lhs, bound)
}

/// Plug-in witness from conditional sample variances, with a bootstrap
/// standard error (each (setting, observable, outcome) cell resampled with
/// replacement at its own size).
pub fn estimate_witness(records: &[SampleRecord], opts: EstimateOptions) -> Result<EstimateReport> {
    if opts.resamples < 2 {
        return Err(Error::InvalidParameter("need at least 2 bootstrap resamples".into()));
    }
    let (groups, kind) = group_records(records);
    let (a, b, family) = required_keys(&groups, &kind)?;
    for key in [a, b].iter().chain(&family) {
        for (label, cell) in groups[key].cells() {
            if cell.len() < MIN_CELL_RECORDS {
                return Err(Error::InsufficientRecords {
                    cell: format!("{}/{}/{}", key.0, key.1, label),
                    count: cell.len(),
                    needed: MIN_CELL_RECORDS,
                });
            }
        }
    }
    let (lhs, bound) = statistic(&groups, &a, &b, &family);

    let replicates: Vec<f64> = (0..opts.resamples)
        .into_par_iter()
        .map(|r| {
            let mut rng = block_rng(opts.seed, r as u64);
            let resampled: BTreeMap<GroupKey, Group> = groups
                .iter()
                .map(|(k, g)| (*k, g.resample(&mut rng)))
                .collect();
            statistic(&resampled, &a, &b, &family).0
        })
        .collect();
    let k = replicates.len() as f64;
    let mean = replicates.iter().sum::<f64>() / k;
    let stderr = (replicates.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt();

    Ok(EstimateReport {
        witness_lhs: lhs,
        bound,
        stderr_lhs: stderr,
        violated_at_3sigma: lhs + 3.0 * stderr < bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_validation() {
        assert!(SampleConfig::coherent(0, 1).is_err());
        let bad = vec![PlanEntry { alice_setting: Axis::Z, bob_observable: BobObservable::X, fraction: 0.7 }];
        assert!(SampleConfig::new(10, 1, bad).is_err());
        let cfg = SampleConfig::ghz(4, 100, 1).unwrap();
        let total: f64 = cfg.settings_plan.iter().map(|e| e.fraction).sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn allocation_is_exact() {
        let cfg = SampleConfig::ghz(4, 1001, 1).unwrap();
        assert_eq!(cfg.allocation().iter().sum::<usize>(), 1001);
    }

    #[test]
    fn observable_labels_roundtrip() {
        for o in [BobObservable::X, BobObservable::P, BobObservable::SzB, BobObservable::PrY, BobObservable::PrYJ(3)] {
            assert_eq!(o.to_string().parse::<BobObservable>().unwrap(), o);
        }
        assert!("pr_y_j0".parse::<BobObservable>().is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let c = CatState::new(1.0).unwrap();
        let cfg = SampleConfig::coherent(10_000, 42).unwrap();
        let a = sample_coherent_cat(c, &cfg).unwrap();
        let b = sample_coherent_cat(c, &cfg).unwrap();
        assert_eq!(a, b);
        let cfg2 = SampleConfig::coherent(10_000, 43).unwrap();
        assert_ne!(a, sample_coherent_cat(c, &cfg2).unwrap());
    }

    #[test]
    fn ghz_perfect_correlations() {
        let cfg = SampleConfig::ghz(3, 3000, 7).unwrap();
        let recs = sample_ghz(3, &cfg).unwrap();
        for r in &recs {
            match r.bob_observable {
                BobObservable::SzB => assert_eq!(r.bob_value, r.alice_outcome.sign()),
                BobObservable::PrY => assert_eq!(r.bob_value, r.alice_outcome.sign()),
                _ => {}
            }
        }
        let est = estimate_witness(&recs, EstimateOptions::default()).unwrap();
        assert_eq!(est.witness_lhs, 0.0);
        assert_eq!(est.bound, 1.0);
        assert!(est.violated_at_3sigma);
    }

    #[test]
    fn small_cells_rejected() {
        let c = CatState::new(1.0).unwrap();
        let cfg = SampleConfig::coherent(30, 1).unwrap();
        let recs = sample_coherent_cat(c, &cfg).unwrap();
        assert!(matches!(
            estimate_witness(&recs, EstimateOptions::default()),
            Err(Error::InsufficientRecords { .. })
        ));
        assert!(estimate_witness(&[], EstimateOptions::default()).is_err());
    }

    #[test]
    fn inverse_cdf_endpoints() {
        let t = InverseCdf::new(vec![0.0, 1.0, 2.0], &[1.0, 1.0, 1.0]);
        assert_eq!(t.sample(0.0), 0.0);
        assert!((t.sample(0.5) - 1.0).abs() < 1e-15);
        assert!((t.sample(0.999_999) - 2.0).abs() < 1e-5);
    }
}
