//! Distribution of distance on `L(n;1)`: pdf, cdf, quantile, moment-generating
//! function, and the geometric counterparts (ball volume, sphere area).
//!
//! Below the injectivity radius `π/n` everything coincides with `S³`; past it
//! the density switches to `(2n/π) sin x cos x tan(π/n)`. At `x = π/n` the
//! left branch is used (the functions are continuous there). `n = 2` never
//! reaches the second branch since the diameter is `π/2`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index `n >= 2` of the family `L(n;1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistributionSpec {
    n: u32,
}

/// `x − sin x cos x`, with a series near 0 where the difference cancels.
fn x_minus_sin_cos(x: f64) -> f64 {
    if x.abs() > 0.25 {
        return x - x.sin() * x.cos();
    }
    // (y − sin y)/2 with y = 2x
    let y = 2.0 * x;
    let y2 = y * y;
    let mut term = y * y2 / 6.0;
    let mut sum = 0.0;
    for j in 1..20 {
        sum += term;
        let a = f64::from(2 * j + 2);
        term *= -y2 / (a * (a + 1.0));
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    0.5 * sum
}

fn in_range(what: &'static str, x: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if !(lo..=hi).contains(&x) {
        return Err(Error::Domain {
            what,
            value: x,
            domain,
        });
    }
    Ok(())
}

impl DistributionSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "closed-form distributions need n >= 2 (got {n})"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Injectivity radius `π/n`.
    pub fn breakpoint(&self) -> f64 {
        PI / f64::from(self.n)
    }

    fn beyond(&self, x: f64) -> bool {
        self.n > 2 && x > self.breakpoint()
    }

    fn tan(&self) -> f64 {
        self.breakpoint().tan()
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        in_range("x", x, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        let c = 2.0 * self.nf() / PI;
        Ok(if self.beyond(x) {
            c * x.sin() * x.cos() * self.tan()
        } else {
            let s = x.sin();
            c * s * s
        })
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        in_range("x", x, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(self.cdf_unchecked(x))
    }

    /// cdf with the argument clamped into `[0, π/2]`.
    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, FRAC_PI_2);
        let scale = self.nf() / PI;
        if self.beyond(x) {
            let c = x.cos();
            1.0 - scale * c * c * self.tan()
        } else {
            (scale * x_minus_sin_cos(x)).min(1.0)
        }
    }

    /// Inverse cdf by bisection on the strictly increasing `F_n`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        in_range("p", p, 0.0, 1.0, "[0, 1]")?;
        if p == 0.0 {
            return Ok(0.0);
        }
        if p == 1.0 {
            return Ok(FRAC_PI_2);
        }
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf_unchecked(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // pick whichever bracket end is closer in probability
        let flo = (self.cdf_unchecked(lo) - p).abs();
        let fhi = (self.cdf_unchecked(hi) - p).abs();
        Ok(if flo <= fhi { lo } else { hi })
    }

    /// `E[e^{td}]`. Near `t = 0` the removable singularity of
    /// `(e^{ta} − 1)/t` is handled by its Taylor polynomial.
    pub fn mgf(&self, t: f64) -> f64 {
        let nf = self.nf();
        let expm1_over_t = |a: f64| {
            if t.abs() < 1e-6 {
                a * (1.0 + a * t / 2.0 * (1.0 + a * t / 3.0 * (1.0 + a * t / 4.0)))
            } else {
                (t * a).exp_m1() / t
            }
        };
        if self.n == 2 {
            4.0 / (PI * (4.0 + t * t)) * (2.0 * expm1_over_t(FRAC_PI_2) + t * (t * FRAC_PI_2).exp())
        } else {
            let a = PI / nf;
            let tail = (t * FRAC_PI_2).exp() - (t * a).exp();
            2.0 * nf / (PI * (4.0 + t * t)) * (2.0 * expm1_over_t(a) + self.tan() * tail)
        }
    }

    /// The same closed form at complex `t` (entire; the apparent poles at
    /// `t = ±2i` cancel, but are not evaluated specially).
    pub fn mgf_complex(&self, t: Complex64) -> Complex64 {
        let nf = self.nf();
        let expm1_over_t = |a: f64| {
            if t.norm() < 1e-6 {
                let at = t * a;
                a * (1.0 + at / 2.0 * (1.0 + at / 3.0 * (1.0 + at / 4.0)))
            } else {
                ((t * a).exp() - 1.0) / t
            }
        };
        let denom = PI * (t * t + 4.0);
        if self.n == 2 {
            (expm1_over_t(FRAC_PI_2) * 2.0 + t * (t * FRAC_PI_2).exp()) * 4.0 / denom
        } else {
            let a = PI / nf;
            let tail = (t * FRAC_PI_2).exp() - (t * a).exp();
            (expm1_over_t(a) * 2.0 + tail * self.tan()) * (2.0 * nf) / denom
        }
    }

    /// Volume of a geodesic ball of radius `r`.
    pub fn ball_volume(&self, r: f64) -> Result<f64> {
        in_range("r", r, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(if self.beyond(r) {
            let c = r.cos();
            2.0 * PI * PI / self.nf() - 2.0 * PI * c * c * self.tan()
        } else {
            2.0 * PI * x_minus_sin_cos(r)
        })
    }

    /// Area of the geodesic sphere of radius `r`.
    pub fn sphere_area(&self, r: f64) -> Result<f64> {
        in_range("r", r, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(if self.beyond(r) {
            4.0 * PI * r.sin() * r.cos() * self.tan()
        } else {
            let s = r.sin();
            4.0 * PI * s * s
        })
    }

    /// Total volume `2π²/n`.
    pub fn volume(&self) -> f64 {
        2.0 * PI * PI / self.nf()
    }
}

pub fn pdf(n: u32, x: f64) -> Result<f64> {
    DistributionSpec::new(n)?.pdf(x)
}

pub fn cdf(n: u32, x: f64) -> Result<f64> {
    DistributionSpec::new(n)?.cdf(x)
}

pub fn quantile(n: u32, p: f64) -> Result<f64> {
    DistributionSpec::new(n)?.quantile(p)
}

pub fn mgf(n: u32, t: f64) -> Result<f64> {
    Ok(DistributionSpec::new(n)?.mgf(t))
}

pub fn ball_volume(n: u32, r: f64) -> Result<f64> {
    DistributionSpec::new(n)?.ball_volume(r)
}

pub fn sphere_area(n: u32, r: f64) -> Result<f64> {
    DistributionSpec::new(n)?.sphere_area(r)
}
