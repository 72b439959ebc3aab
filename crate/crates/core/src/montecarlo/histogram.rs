//! Equal-width histograms of distance samples.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::sampling::SampleConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceHistogram {
    /// `bins + 1` increasing edges; the first is 0.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    /// The sampling run, when the samples came from one.
    pub config: Option<SampleConfig>,
}

impl DistanceHistogram {
    pub fn with_config(mut self, config: SampleConfig) -> Self {
        self.config = Some(config);
        self
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self, i: usize) -> f64 {
        self.bin_edges[i + 1] - self.bin_edges[i]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }

    /// `count / (total · width)` per bin, so the densities integrate to 1.
    pub fn density(&self) -> Vec<f64> {
        let total = self.total as f64;
        (0..self.bins())
            .map(|i| self.counts[i] as f64 / (total * self.bin_width(i)))
            .collect()
    }

    /// Cumulative fraction of samples at each edge.
    pub fn cumulative(&self) -> Vec<f64> {
        let total = self.total as f64;
        let mut acc = 0u64;
        std::iter::once(0.0)
            .chain(self.counts.iter().map(|c| {
                acc += c;
                acc as f64 / total
            }))
            .collect()
    }
}

/// Bins `samples` over `[0, max(π/2, max sample)]` into `bins` equal bins.
/// A sample equal to the upper edge lands in the last bin.
pub fn build_histogram(samples: &[f64], bins: usize) -> Result<DistanceHistogram> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be at least 1".into()));
    }
    if let Some(&bad) = samples.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::Domain {
            what: "distance sample",
            value: bad,
            domain: "finite and nonnegative",
        });
    }
    let upper = samples.iter().copied().fold(FRAC_PI_2, f64::max);
    let bin_edges: Vec<f64> = (0..=bins).map(|i| upper * i as f64 / bins as f64).collect();
    let mut counts = vec![0u64; bins];
    for &x in samples {
        let mut i = ((x / upper) * bins as f64) as usize;
        i = i.min(bins - 1);
        // the float index can land one bin off at an edge
        while i > 0 && x < bin_edges[i] {
            i -= 1;
        }
        while i + 1 < bins && x >= bin_edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    Ok(DistanceHistogram {
        bin_edges,
        counts,
        total: samples.len() as u64,
        config: None,
    })
}
