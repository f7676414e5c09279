//! Statistical checks of the Monte Carlo sampler against the analytic
//! conditional distributions.

use std::f64::consts::SQRT_2;

use catsteer::analytic_cat::{cond_p_density, cond_x_density, steering_witness, CatState};
use catsteer::mc_sampler::{
    estimate_witness, sample_coherent_cat, sample_ghz, BobObservable, EstimateOptions,
    SampleConfig,
};
use catsteer::{Axis, Outcome};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson statistic of `values` against `density` on equal bins of [lo, hi];
/// returns the p-value. Bin probabilities are integrated by Simpson.
fn chi_square_p(values: &[f64], density: impl Fn(f64) -> f64, lo: f64, hi: f64, bins: usize) -> f64 {
    let w = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut inside = 0usize;
    for &v in values {
        if v >= lo && v < hi {
            counts[((v - lo) / w) as usize] += 1;
            inside += 1;
        }
    }
    let probs: Vec<f64> = (0..bins)
        .map(|b| {
            let a = lo + b as f64 * w;
            let k = 64;
            let h = w / k as f64;
            let mut s = density(a) + density(a + w);
            for i in 1..k {
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * density(a + i as f64 * h);
            }
            s * h / 3.0
        })
        .collect();
    let total: f64 = probs.iter().sum();
    let mut stat = 0.0;
    let mut dof = 0usize;
    for (c, p) in counts.iter().zip(&probs) {
        let e = inside as f64 * p / total;
        if e >= 5.0 {
            stat += (*c as f64 - e).powi(2) / e;
            dof += 1;
        }
    }
    1.0 - ChiSquared::new((dof - 1) as f64).unwrap().cdf(stat)
}

fn values(
    recs: &[catsteer::mc_sampler::SampleRecord],
    obs: BobObservable,
    o: Outcome,
) -> Vec<f64> {
    recs.iter()
        .filter(|r| r.bob_observable == obs && r.alice_outcome == o)
        .map(|r| r.bob_value)
        .collect()
}

#[test]
fn p_samples_fit_fringe_density() {
    let cat = CatState::new(2.0).unwrap();
    let recs = sample_coherent_cat(cat, &SampleConfig::coherent(100_000, 17).unwrap()).unwrap();
    for o in Outcome::BOTH {
        let v = values(&recs, BobObservable::P, o);
        let p = chi_square_p(&v, |p| cond_p_density(cat, o, p), -3.5, 3.5, 70);
        assert!(p > 0.01, "{o:?}: p-value {p}");
    }
}

#[test]
fn x_samples_fit_gaussian_hill() {
    let cat = CatState::new(1.0).unwrap();
    let recs = sample_coherent_cat(cat, &SampleConfig::coherent(60_000, 3).unwrap()).unwrap();
    for o in Outcome::BOTH {
        let v = values(&recs, BobObservable::X, o);
        let c = o.sign() * SQRT_2;
        let p = chi_square_p(&v, |x| cond_x_density(cat, o, x), c - 3.0, c + 3.0, 40);
        assert!(p > 0.01, "{o:?}: p-value {p}");
    }
}

#[test]
fn outcome_frequencies_are_fair() {
    let cat = CatState::new(0.5).unwrap();
    let recs = sample_coherent_cat(cat, &SampleConfig::coherent(40_000, 8).unwrap()).unwrap();
    for setting in [Axis::Z, Axis::X] {
        let n = recs.iter().filter(|r| r.alice_setting == setting).count() as f64;
        let plus = recs
            .iter()
            .filter(|r| r.alice_setting == setting && r.alice_outcome == Outcome::Plus)
            .count() as f64;
        // 4 standard deviations of a fair binomial.
        assert!((plus / n - 0.5).abs() < 4.0 * (0.25 / n).sqrt(), "{setting:?}");
    }
}

#[test]
fn estimate_converges_to_analytic_witness() {
    let cat = CatState::new(0.5).unwrap();
    let analytic = steering_witness(cat).lhs;
    let mut last_err = f64::INFINITY;
    for shots in [4_000, 64_000] {
        let recs = sample_coherent_cat(cat, &SampleConfig::coherent(shots, 21).unwrap()).unwrap();
        let r = estimate_witness(&recs, EstimateOptions::default()).unwrap();
        assert!((r.witness_lhs - analytic).abs() < 4.0 * r.stderr_lhs, "{shots}: {r:?}");
        assert!(r.stderr_lhs < last_err);
        last_err = r.stderr_lhs;
    }
}

#[test]
fn ghz_samples_are_perfectly_correlated() {
    for n in [3, 4] {
        let recs = sample_ghz(n, &SampleConfig::ghz(n, 3_000, 2).unwrap()).unwrap();
        let r = estimate_witness(&recs, EstimateOptions::default()).unwrap();
        assert_eq!(r.witness_lhs, 0.0);
        assert!((r.bound - (n as f64 - 1.0) / 2.0).abs() < 1e-12);
        assert!(r.violated_at_3sigma);
    }
}
