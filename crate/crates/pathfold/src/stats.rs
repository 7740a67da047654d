//! Small statistical helpers shared by the experiments and the test suites:
//! streaming moments, chi-square goodness of fit, Kolmogorov–Smirnov
//! distance, and a log–log slope fit.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Numerically stable streaming mean and variance (Welford's recurrence).
#[derive(Clone, Debug, Default)]
pub struct StreamingMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl StreamingMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        assert!(self.count > 0, "mean of an empty stream");
        self.mean
    }

    /// Unbiased sample variance (denominator count − 1).
    pub fn sample_variance(&self) -> f64 {
        assert!(self.count > 1, "variance needs at least two observations");
        self.m2 / (self.count - 1) as f64
    }
}

/// Pearson chi-square statistic of observed counts against a vector of cell
/// probabilities (which must be positive and sum to 1 up to rounding).
pub fn chi_square_statistic(observed: &[u64], probs: &[f64]) -> f64 {
    assert_eq!(observed.len(), probs.len());
    assert!(!observed.is_empty());
    let total: u64 = observed.iter().sum();
    let n = total as f64;
    observed
        .iter()
        .zip(probs)
        .map(|(&obs, &p)| {
            assert!(p > 0.0, "cells must have positive probability");
            let expect = n * p;
            let d = obs as f64 - expect;
            d * d / expect
        })
        .sum()
}

/// Upper-tail p-value of a chi-square statistic with the given degrees of
/// freedom.
pub fn chi_square_p_value(statistic: f64, dof: usize) -> f64 {
    assert!(dof >= 1);
    let dist = ChiSquared::new(dof as f64).expect("valid degrees of freedom");
    1.0 - dist.cdf(statistic)
}

/// Kolmogorov–Smirnov distance between the empirical distribution of
/// `sorted` (ascending) and a reference cdf: the maximum over sample points
/// of the gap on either side of the empirical step.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!sorted.is_empty());
    let n = sorted.len() as f64;
    let mut worst: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        debug_assert!(i == 0 || sorted[i - 1] <= x, "samples must be sorted");
        let f = cdf(x);
        let below = f - i as f64 / n;
        let above = (i + 1) as f64 / n - f;
        worst = worst.max(below).max(above);
    }
    worst
}

/// Least-squares slope of ln(y) against ln(x). All inputs must be positive.
pub fn fit_log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points for a slope");
    let lx: Vec<f64> = xs
        .iter()
        .map(|&x| {
            assert!(x > 0.0);
            x.ln()
        })
        .collect();
    let ly: Vec<f64> = ys
        .iter()
        .map(|&y| {
            assert!(y > 0.0);
            y.ln()
        })
        .collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
