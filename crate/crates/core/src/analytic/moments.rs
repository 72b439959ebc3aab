//! Moments `I_{n,k} = E[d^k]` of the distance between two independent
//! uniform points of `L(n;1)`, by several independent routes:
//!
//! - the second-order recurrence in `k` seeded with `I_{n,0}` and `I_{n,1}`;
//! - the explicit alternating finite sum solving that recurrence;
//! - the closed form in terms of `₁F₂`;
//! - nested adaptive quadrature of the defining double integral.
//!
//! The recurrence multiplies `I_{n,k−2}` by `−k(k−1)/4` while the moments
//! themselves only grow like `(π/2)^k / k²`, so rounding errors are amplified
//! roughly by `k!/2^k`. At `k = 20` that is ~5·10¹², enough to destroy an f64
//! evaluation; the recurrence and the finite sum are therefore carried out in
//! double-double arithmetic and limited to `k <= K_MAX`. Larger `k` should go
//! through [`moment_closed_form`], which has no such cancellation.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::ddouble::DoubleDouble;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Integral, Tolerance};
use crate::specfun::{cos_integral, euler_gamma, hyp1f2, sin_integral};

/// Largest `k` accepted by the recurrence and finite-sum methods.
pub const K_MAX: u32 = 25;

/// Double-double unit roundoff, used in error bounds.
const DD_EPS: f64 = 1.0e-32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    Recurrence,
    FiniteSum,
    ClosedForm,
    Quadrature,
    Asymptotic,
    LargeNLimit,
}

impl MomentMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Recurrence => "recurrence",
            Self::FiniteSum => "finite_sum",
            Self::ClosedForm => "closed_form",
            Self::Quadrature => "quadrature",
            Self::Asymptotic => "asymptotic",
            Self::LargeNLimit => "large_n_limit",
        }
    }
}

impl std::str::FromStr for MomentMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "recurrence" => Self::Recurrence,
            "finite_sum" | "finite-sum" => Self::FiniteSum,
            "closed_form" | "closed-form" => Self::ClosedForm,
            "quadrature" => Self::Quadrature,
            "asymptotic" => Self::Asymptotic,
            "large_n_limit" | "large-n-limit" => Self::LargeNLimit,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown moment method `{other}`"
                )))
            }
        })
    }
}

impl std::fmt::Display for MomentMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    pub n: u32,
    pub k: i32,
    pub value: f64,
    pub method: MomentMethod,
    pub abs_error_bound: f64,
}

fn check_n(n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must be at least {min}"
        )));
    }
    Ok(())
}

fn check_k_max(k: u32) -> Result<()> {
    if k > K_MAX {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds {K_MAX}; use the closed form or quadrature"
        )));
    }
    Ok(())
}

/// `Π k(k−1)/4` over the recurrence steps from the parity base up to `k`.
fn recurrence_amplification(k: u32) -> f64 {
    let mut a = 1.0;
    let mut j = k;
    while j >= 2 {
        a *= f64::from(j) * f64::from(j - 1) / 4.0;
        j -= 2;
    }
    a
}

fn dd_tan_pi_over(n: u32) -> DoubleDouble {
    (DoubleDouble::PI / f64::from(n)).tan()
}

pub fn moment_recurrence(n: u32, k: u32) -> Result<MomentResult> {
    check_n(n, 2)?;
    check_k_max(k)?;
    let pi = DoubleDouble::PI;
    let half_pi = pi / 2.0;
    let nf = f64::from(n);

    // inhomogeneous term of I_k = −k(k−1)/4 · I_{k−2} + h(k)
    let (first, h): (DoubleDouble, Box<dyn Fn(u32) -> DoubleDouble>) = if n == 2 {
        (
            DoubleDouble::ONE / pi + pi / 4.0,
            Box::new(move |j| {
                half_pi.powi(j) / f64::from(j + 1) + half_pi.powi(j - 1) * f64::from(j) / pi
            }),
        )
    } else {
        let t = dd_tan_pi_over(n);
        let pn = pi / nf;
        (
            pi / (2.0 * nf) + t * ((nf - 2.0) / 4.0),
            Box::new(move |j| {
                pn.powi(j) / f64::from(j + 1) + (half_pi.powi(j) - pn.powi(j)) * t * nf / (pi * 2.0)
            }),
        )
    };

    let mut prev2 = DoubleDouble::ONE; // I_{k-2}
    let mut prev1 = first; // I_{k-1}
    let value = match k {
        0 => DoubleDouble::ONE,
        1 => first,
        _ => {
            for j in 2..=k {
                let jf = f64::from(j);
                let next = -(prev2 * (jf * (jf - 1.0) / 4.0)) + h(j);
                prev2 = prev1;
                prev1 = next;
            }
            prev1
        }
    }
    .to_f64();
    Ok(MomentResult {
        n,
        k: k as i32,
        value,
        method: MomentMethod::Recurrence,
        abs_error_bound: 2.0 * f64::EPSILON * value.abs()
            + 64.0 * DD_EPS * recurrence_amplification(k) * value.abs().max(1.0),
    })
}

/// The recurrence unrolled into an alternating finite sum:
///
/// ```text
/// I_{n,k} = k!/2^k · ( [k even](−1)^{k/2}
///     + Σ_{r ≡ k (2), 1 ≤ r ≤ k} (−1)^{(k−r)/2} [ (2π/n)^r/(r+1)!
///                                  + (n/2π) tan(π/n) (π^r − (2π/n)^r)/r! ] )
/// ```
///
/// For even `k` this is term-for-term the first-order solution of the even
/// subsequence with `y₀ = I_{n,0} = 1`. On the odd subsequence the seed
/// `I_{n,−1}` is multiplied by zero at the first step, so no seed term
/// survives.
pub fn moment_finite_sum(n: u32, k: u32) -> Result<MomentResult> {
    check_n(n, 3)?;
    check_k_max(k)?;
    let pi = DoubleDouble::PI;
    let nf = f64::from(n);
    let two_pi_n = pi * 2.0 / nf;
    let weight = dd_tan_pi_over(n) * nf / (pi * 2.0);

    let mut bracket = if k.is_multiple_of(2) {
        if (k / 2).is_multiple_of(2) {
            DoubleDouble::ONE
        } else {
            -DoubleDouble::ONE
        }
    } else {
        DoubleDouble::ZERO
    };
    let mut magnitude: f64 = 1.0;
    let mut r = k;
    while r >= 1 {
        let r_fact = (1..=r).fold(DoubleDouble::ONE, |acc, i| acc * f64::from(i));
        let a = two_pi_n.powi(r);
        let term = a / (r_fact * f64::from(r + 1)) + weight * (pi.powi(r) - a) / r_fact;
        magnitude = magnitude.max(term.to_f64().abs());
        if ((k - r) / 2).is_multiple_of(2) {
            bracket = bracket + term;
        } else {
            bracket = bracket - term;
        }
        if r < 2 {
            break;
        }
        r -= 2;
    }
    let mut prefactor = DoubleDouble::ONE;
    for i in 1..=k {
        prefactor = prefactor * (f64::from(i) / 2.0);
    }
    let value = (prefactor * bracket).to_f64();
    Ok(MomentResult {
        n,
        k: k as i32,
        value,
        method: MomentMethod::FiniteSum,
        abs_error_bound: 2.0 * f64::EPSILON * value.abs()
            + 64.0 * DD_EPS * f64::from(k + 1) * magnitude * prefactor.to_f64(),
    })
}

/// Closed form via `₁F₂`. `n = 2` uses the limiting expression; the `n >= 3`
/// formula contains `tan(π/n)` and is never evaluated at `n = 2`.
pub fn moment_closed_form(n: u32, k: u32) -> Result<MomentResult> {
    check_n(n, 2)?;
    let kf = f64::from(k);
    let value = if n == 2 {
        let z = -PI * PI / 4.0;
        let f1 = hyp1f2(1.0, (kf + 3.0) / 2.0, (kf + 4.0) / 2.0, z)?;
        let f2 = hyp1f2(1.0, (kf + 4.0) / 2.0, (kf + 5.0) / 2.0, z)?;
        let f3 = hyp1f2(2.0, (kf + 5.0) / 2.0, (kf + 6.0) / 2.0, z)?;
        FRAC_PI_2.powi(k as i32) / (kf + 1.0)
            * (2.0 * f1 + PI * PI / ((kf + 2.0) * (kf + 3.0)) * (f2 - 4.0 / (kf + 4.0) * f3))
    } else {
        let nf = f64::from(n);
        let pn = PI / nf;
        let t = pn.tan();
        let zn = -pn * pn;
        let f_near = hyp1f2(1.0, (kf + 4.0) / 2.0, (kf + 5.0) / 2.0, zn)?;
        let f_far = hyp1f2(1.0, (kf + 3.0) / 2.0, (kf + 4.0) / 2.0, -PI * PI / 4.0)?;
        let f_mid = hyp1f2(1.0, (kf + 3.0) / 2.0, (kf + 4.0) / 2.0, zn)?;
        let ki = k as i32;
        (4.0 / (kf + 3.0) * pn.powi(ki + 2) * f_near
            + t * (nf * FRAC_PI_2.powi(ki + 1) * f_far - 2.0 * pn.powi(ki + 1) * f_mid))
            / ((kf + 1.0) * (kf + 2.0))
    };
    if !value.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "I_({n},{k}) overflows double precision"
        )));
    }
    Ok(MomentResult {
        n,
        k: k as i32,
        value,
        method: MomentMethod::ClosedForm,
        abs_error_bound: 32.0 * f64::EPSILON * value.abs(),
    })
}

/// `E[g(d)]` on `L(n;1)` by nested adaptive quadrature of
///
/// ```text
/// (2n/π) ∫₀^{π/n} sec²θ ∫_θ^{π/2} g(u) cos u sin u du dθ
/// ```
///
/// Both integrals are taken in the complementary variables `v = π/2 − θ`,
/// `s = π/2 − u`, so the outer integrand is `G(v)/sin²v` with
/// `G(v) = ∫₀^v g(π/2 − s) sin(π/2 − s) sin s ds`. For `n = 2` the outer range
/// reaches `v = 0` where `G(v) ~ v²` and `sin²v ~ v²`; computing `G` to
/// relative accuracy keeps the ratio well defined, so the improper integral
/// needs no special casing.
pub fn distance_expectation_quadrature<G: Fn(f64) -> f64>(n: u32, g: G) -> Result<Integral> {
    check_n(n, 2)?;
    let inner_tol = Tolerance::relative(1e-14);
    let outer_tol = Tolerance::absolute(1e-12).with_rel(1e-14);
    let mut failure = None;
    let mut evaluations = 0;
    let lower = FRAC_PI_2 - PI / f64::from(n);
    let outer = integrate(
        |v| {
            if failure.is_some() {
                return 0.0;
            }
            let inner = integrate(
                |s| {
                    let u = FRAC_PI_2 - s;
                    g(u) * u.sin() * s.sin()
                },
                0.0,
                v,
                inner_tol,
            );
            match inner {
                Ok(r) => {
                    evaluations += r.evaluations;
                    let sv = v.sin();
                    r.value / (sv * sv)
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        lower.max(0.0),
        FRAC_PI_2,
        outer_tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    let scale = 2.0 * f64::from(n) / PI;
    let value = scale * outer.value;
    Ok(Integral {
        value,
        abs_error: scale * outer.abs_error + inner_tol.rel * value.abs(),
        evaluations: evaluations + outer.evaluations,
    })
}

/// Quadrature of the defining integral; `k = −1` is admitted for `n >= 3`.
pub fn moment_quadrature(n: u32, k: i32) -> Result<MomentResult> {
    check_n(n, 2)?;
    if k < -1 || (n == 2 && k < 0) {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs k >= 0, or k = -1 with n >= 3 (got n = {n}, k = {k})"
        )));
    }
    let r = distance_expectation_quadrature(n, |u| u.powi(k))?;
    Ok(MomentResult {
        n,
        k,
        value: r.value,
        method: MomentMethod::Quadrature,
        abs_error_bound: r.abs_error,
    })
}

/// `E[1/d]` in terms of the sine and cosine integrals.
pub fn moment_negative_one(n: u32) -> Result<MomentResult> {
    check_n(n, 3)?;
    let nf = f64::from(n);
    let x = 2.0 * PI / nf;
    let value = nf / PI
        * (euler_gamma() - cos_integral(x)?
            + x.ln()
            + (sin_integral(PI) - sin_integral(x)) * (PI / nf).tan());
    Ok(MomentResult {
        n,
        k: -1,
        value,
        method: MomentMethod::ClosedForm,
        abs_error_bound: 64.0 * f64::EPSILON * value.abs(),
    })
}

/// Leading-order growth of `I_{n,k}` as `k → ∞`.
pub fn moment_asymptotic(n: u32, k: u32) -> Result<f64> {
    check_n(n, 2)?;
    if k < 1 {
        return Err(Error::InvalidArgument(
            "asymptotic form needs k >= 1".into(),
        ));
    }
    let kf = f64::from(k);
    Ok(if n == 2 {
        2.0 / kf * FRAC_PI_2.powi(k as i32)
    } else {
        let nf = f64::from(n);
        nf / (kf * kf) * FRAC_PI_2.powi(k as i32 + 1) * (PI / nf).tan()
    })
}

/// `lim_{n→∞} I_{n,k}`: the moments of the sine distribution `sin 2x` on `[0, π/2]`.
pub fn moment_large_n_limit(k: u32) -> Result<f64> {
    let kf = f64::from(k);
    let f = hyp1f2(1.0, (kf + 3.0) / 2.0, (kf + 4.0) / 2.0, -PI * PI / 4.0)?;
    Ok(PI / ((kf + 2.0) * (kf + 1.0)) * FRAC_PI_2.powi(k as i32 + 1) * f)
}

/// Dispatches on `method`; asymptotic and large-n values are wrapped with a
/// zero error bound since they are limits, not estimates.
pub fn moment(n: u32, k: i32, method: MomentMethod) -> Result<MomentResult> {
    let nonneg =
        || u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("{method} needs k >= 0")));
    match method {
        MomentMethod::Recurrence => moment_recurrence(n, nonneg()?),
        MomentMethod::FiniteSum => moment_finite_sum(n, nonneg()?),
        MomentMethod::ClosedForm if k == -1 => moment_negative_one(n),
        MomentMethod::ClosedForm => moment_closed_form(n, nonneg()?),
        MomentMethod::Quadrature => moment_quadrature(n, k),
        MomentMethod::Asymptotic => Ok(MomentResult {
            n,
            k,
            value: moment_asymptotic(n, nonneg()?)?,
            method,
            abs_error_bound: 0.0,
        }),
        MomentMethod::LargeNLimit => Ok(MomentResult {
            n,
            k,
            value: moment_large_n_limit(nonneg()?)?,
            method,
            abs_error_bound: 0.0,
        }),
    }
}
