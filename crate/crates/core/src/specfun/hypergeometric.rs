//! Pochhammer symbols and the generalized hypergeometric series
//!
//! ₚF_q(a₁..a_p; b₁..b_q; z) = Σ_j (a₁)_j⋯(a_p)_j / ((b₁)_j⋯(b_q)_j) · z^j / j!
//!
//! restricted to `p <= q`, where the series is entire. Terms are generated by
//! their ratio and accumulated in double-double precision, so alternating
//! series with large intermediate terms (e.g. `₀F₀(−10) = e^{−10}`) keep
//! full f64 accuracy in the result.

use serde::{Deserialize, Serialize};

use crate::ddouble::DoubleDouble;
use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 10_000;
const TERM_RTOL: f64 = 1e-16;

/// Rising factorial `(a)_j = a(a+1)⋯(a+j−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (a + f64::from(i)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricParams {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub argument: f64,
}

impl HypergeometricParams {
    pub fn new(upper: impl Into<Vec<f64>>, lower: impl Into<Vec<f64>>, argument: f64) -> Self {
        Self {
            upper: upper.into(),
            lower: lower.into(),
            argument,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.upper.len() > self.lower.len() {
            return Err(Error::InvalidParameters(format!(
                "{}F{} is not entire; need p <= q",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if let Some(b) = self.lower.iter().find(|b| **b <= 0.0 && b.fract() == 0.0) {
            return Err(Error::InvalidParameters(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
        let all = self
            .upper
            .iter()
            .chain(&self.lower)
            .chain(std::iter::once(&self.argument));
        if all.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameters("parameters must be finite".into()));
        }
        Ok(())
    }
}

/// Sums the series until two consecutive terms fall below `1e−16` relative to
/// the partial sum, or fails after [`MAX_TERMS`] terms.
pub fn hyp_pfq(params: &HypergeometricParams) -> Result<f64> {
    params.validate()?;
    let z = DoubleDouble::new(params.argument);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut small_run = 0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        let mut num = z;
        for a in &params.upper {
            num = num * (DoubleDouble::new(*a) + DoubleDouble::new(jf));
        }
        let mut den = DoubleDouble::new(jf + 1.0);
        for b in &params.lower {
            den = den * (DoubleDouble::new(*b) + DoubleDouble::new(jf));
        }
        term = term * num / den;
        sum = sum + term;
        if term.to_f64().abs() <= TERM_RTOL * sum.to_f64().abs() {
            small_run += 1;
            if small_run == 2 {
                return Ok(sum.to_f64());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "{}F{} series after {MAX_TERMS} terms",
        params.upper.len(),
        params.lower.len()
    )))
}

/// `₁F₂(a; b₁, b₂; z)`
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    hyp_pfq(&HypergeometricParams::new([a], [b1, b2], z))
}
