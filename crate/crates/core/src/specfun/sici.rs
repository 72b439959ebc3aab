//! Sine and cosine integrals.
//!
//! `Si(x) = ∫₀ˣ sin t / t dt` and `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt`.
//! Power series for `|x| <= 4`; beyond that the continued fraction for
//! `E₁(ix)` (modified Lentz) avoids the cancellation the series would suffer.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

const SERIES_LIMIT: f64 = 4.0;

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

pub fn sin_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let t = x.abs();
    let v = if t <= SERIES_LIMIT {
        si_series(t)
    } else {
        FRAC_PI_2 + e1_imaginary(t).im
    };
    v.copysign(x)
}

pub fn cos_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(0, inf) for the cosine integral",
        });
    }
    if x <= SERIES_LIMIT {
        Ok(EULER_GAMMA + x.ln() + cin_series(x))
    } else {
        Ok(-e1_imaginary(x).re)
    }
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)^j x^{2j+1} / ((2j+1)(2j+1)!)
    let x2 = x * x;
    let mut power = x; // (−1)^j x^{2j+1}/(2j+1)!
    let mut sum = x;
    for j in 1..60 {
        let a = f64::from(2 * j);
        power *= -x2 / (a * (a + 1.0));
        let term = power / (a + 1.0);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `∫₀ˣ (cos t − 1)/t dt = Σ_{j≥1} (−1)^j x^{2j} / (2j (2j)!)`
fn cin_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut power = 1.0;
    let mut sum = 0.0;
    for j in 1..60 {
        let a = f64::from(2 * j);
        power *= -x2 / ((a - 1.0) * a);
        let term = power / a;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `e^{ix}·E₁(ix)` folded back: returns `h` with `Ci = −Re h`, `Si = π/2 + Im h`.
fn e1_imaginary(x: f64) -> Complex64 {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -f64::from((i - 1) * (i - 1));
        b += 2.0;
        d = (a * d + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    Complex64::new(x.cos(), -x.sin()) * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn si_at_zero_and_pi() {
        assert_eq!(sin_integral(0.0), 0.0);
        // Wilbraham–Gibbs constant, high-precision reference
        assert!((sin_integral(PI) - 1.851_937_051_982_466_2).abs() < 1e-15);
    }

    #[test]
    fn si_is_odd() {
        for &x in &[0.1, 1.3, 3.9, 4.1, 12.0, 40.0] {
            assert_eq!(sin_integral(-x), -sin_integral(x));
        }
    }

    #[test]
    fn ci_reference_value() {
        let v = cos_integral(2.0 * PI / 5.0).unwrap();
        assert!((v - 0.435_953_871_416_894_54).abs() < 1e-15);
    }

    #[test]
    fn ci_domain() {
        assert!(cos_integral(0.0).is_err());
        assert!(cos_integral(-1.0).is_err());
        assert!(cos_integral(f64::NAN).is_err());
    }

    #[test]
    fn branches_agree_at_switchover() {
        let lo = 4.0 - 1e-9;
        let hi = 4.0 + 1e-9;
        // the jump across x = 4 must match the derivative over the gap
        let step = hi - lo;
        let dsi = sin_integral(hi) - sin_integral(lo);
        assert!((dsi - 4f64.sin() / 4.0 * step).abs() < 1e-13);
        let dci = cos_integral(hi).unwrap() - cos_integral(lo).unwrap();
        assert!((dci - 4f64.cos() / 4.0 * step).abs() < 1e-13);
        // evaluate the continued fraction inside the series range too
        for &x in &[2.5, 3.0, 3.5] {
            let h = e1_imaginary(x);
            assert!((FRAC_PI_2 + h.im - si_series(x)).abs() < 1e-13);
            assert!((-h.re - (EULER_GAMMA + x.ln() + cin_series(x))).abs() < 1e-13);
        }
    }

    #[test]
    fn large_argument_limits() {
        assert!((sin_integral(1e4) - FRAC_PI_2).abs() < 2e-4);
        assert!(cos_integral(1e4).unwrap().abs() < 2e-4);
    }

    #[test]
    fn small_x_ci_minus_log() {
        for &x in &[1e-4, 5e-4, 9e-4] {
            let lhs = cos_integral(x).unwrap() - x.ln();
            let series = EULER_GAMMA - x * x / 4.0 + x.powi(4) / 96.0;
            assert!((lhs - series).abs() < 2e-15);
        }
    }
}
