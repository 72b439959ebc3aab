//! Kolmogorov–Smirnov statistics with asymptotic critical values.

use serde::{Deserialize, Serialize};

use super::histogram::DistanceHistogram;
use crate::analytic::DistributionSpec;
use crate::error::{Error, Result};
use crate::geometry::LensSpace;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub threshold: f64,
    pub alpha: f64,
    /// Effective sample size `N` (or `nm/(n+m)` for two samples).
    pub effective_n: f64,
    pub passed: bool,
}

impl KsReport {
    fn new(statistic: f64, effective_n: f64, alpha: f64) -> Result<Self> {
        let threshold = ks_critical_value(alpha)? / effective_n.sqrt();
        Ok(Self {
            statistic,
            threshold,
            alpha,
            effective_n,
            passed: statistic <= threshold,
        })
    }
}

/// Limiting distribution of `√N·D_N`:
/// `K(λ) = 1 − 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`.
pub fn kolmogorov_cdf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    if lambda < 0.3 {
        // the alternating series converges slowly here; use the theta dual
        // K(λ) = √(2π)/λ Σ_{k≥1} e^{−(2k−1)²π²/(8λ²)}
        let s: f64 = (1..=20)
            .map(|k| {
                let j = (2 * k - 1) as f64;
                (-(j * j) * std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda)).exp()
            })
            .sum();
        return (2.0 * std::f64::consts::PI).sqrt() / lambda * s;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    (1.0 - 2.0 * sum).clamp(0.0, 1.0)
}

/// `c(α)` with `P(K > c) = α`; `c(0.01) ≈ 1.628`.
pub fn ks_critical_value(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "(0, 1)",
        });
    }
    let (mut lo, mut hi) = (0.05, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - kolmogorov_cdf(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `sup_x |F_N(x) − F(x)|` for the empirical cdf of `samples`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

fn analytic_cdf(space: &LensSpace) -> Result<DistributionSpec> {
    if !space.homogeneous() {
        return Err(Error::InvalidSpace {
            n: space.n(),
            m: space.m(),
            reason: "analytic cdf needs a homogeneous space",
        });
    }
    // L(n; n−1) is isometric to L(n; 1)
    DistributionSpec::new(space.n())
}

/// One-sample test of `samples` against the analytic distance cdf of a
/// homogeneous `space` (`n ≥ 2`).
pub fn ks_statistic(samples: &[f64], space: &LensSpace, alpha: f64) -> Result<KsReport> {
    let dist = analytic_cdf(space)?;
    let d = ks_one_sample(samples, |x| dist.cdf_unchecked(x))?;
    KsReport::new(d, samples.len() as f64, alpha)
}

pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> Result<KsReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    KsReport::new(d, na * nb / (na + nb), alpha)
}

/// KS test using only histogram edges: the supremum runs over bin edges, so
/// the statistic is a lower bound on the one computed from raw samples.
pub fn ks_binned(hist: &DistanceHistogram, space: &LensSpace, alpha: f64) -> Result<KsReport> {
    if hist.total == 0 {
        return Err(Error::EmptySamples);
    }
    let dist = analytic_cdf(space)?;
    let d = hist
        .bin_edges
        .iter()
        .zip(hist.cumulative())
        .map(|(&e, c)| (c - dist.cdf_unchecked(e)).abs())
        .fold(0.0, f64::max);
    KsReport::new(d, hist.total as f64, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kolmogorov_known_values() {
        // 1 − K(λ) at the standard table points
        assert!((1.0 - kolmogorov_cdf(1.3581) - 0.05).abs() < 1e-4);
        assert!((1.0 - kolmogorov_cdf(1.6276) - 0.01).abs() < 1e-4);
        assert!((1.0 - kolmogorov_cdf(1.2238) - 0.10).abs() < 1e-4);
        // both series agree where they overlap
        for l in [0.3, 0.5, 0.8] {
            let s: f64 = (1..=20)
                .map(|k| {
                    let j = (2 * k - 1) as f64;
                    (-(j * j) * std::f64::consts::PI.powi(2) / (8.0 * l * l)).exp()
                })
                .sum();
            let dual = (2.0 * std::f64::consts::PI).sqrt() / l * s;
            assert!((dual - kolmogorov_cdf(l)).abs() < 1e-12);
        }
    }

    #[test]
    fn critical_value() {
        assert!((ks_critical_value(0.01).unwrap() - 1.628).abs() < 1e-3);
        assert!((ks_critical_value(0.05).unwrap() - 1.358).abs() < 1e-3);
        assert!(ks_critical_value(0.0).is_err());
        assert!(ks_critical_value(1.0).is_err());
    }

    #[test]
    fn one_sample_on_uniform_grid() {
        // midpoints of N cells give D = 1/(2N) against the uniform cdf
        let n = 50;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_one_sample(&s, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.5 / n as f64).abs() < 1e-15);
    }

    #[test]
    fn two_sample_basic() {
        let a = [0.1, 0.2, 0.3];
        let r = ks_two_sample(&a, &a, 0.01).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.passed);
        let r = ks_two_sample(&[0.0, 0.1], &[1.0, 1.1, 1.2], 0.01).unwrap();
        assert_eq!(r.statistic, 1.0);
        // ties across the samples
        let r = ks_two_sample(&[1.0, 2.0], &[1.0, 1.0, 2.0, 2.0], 0.5).unwrap();
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn requires_homogeneous_space() {
        let l52 = LensSpace::new(5, 2).unwrap();
        assert!(ks_statistic(&[0.3], &l52, 0.01).is_err());
        let l11 = LensSpace::new(1, 1).unwrap();
        assert!(ks_statistic(&[0.3], &l11, 0.01).is_err());
        let l54 = LensSpace::new(5, 4).unwrap();
        assert!(ks_statistic(&[0.3], &l54, 0.01).is_ok());
    }

    #[test]
    fn quantile_samples_pass() {
        let dist = DistributionSpec::new(4).unwrap();
        let n = 2000;
        let s: Vec<f64> = (0..n)
            .map(|i| dist.quantile((i as f64 + 0.5) / n as f64).unwrap())
            .collect();
        let r = ks_statistic(&s, &LensSpace::new(4, 1).unwrap(), 0.01).unwrap();
        assert!(r.passed);
        assert!(r.statistic < 1e-3);
        let h = super::super::build_histogram(&s, 40).unwrap();
        let b = ks_binned(&h, &LensSpace::new(4, 1).unwrap(), 0.01).unwrap();
        assert!(b.statistic <= r.statistic + 1e-15);
    }
}
