//! Distance distributions on three-dimensional lens spaces.
//!
//! A lens space `L(n;m)` is the quotient of the unit 3-sphere by the cyclic
//! action `ω·(α, β) = (ωα, ω^m β)` with `ω = e^{2πi/n}`. For the homogeneous
//! family `L(n;1)` the distribution of the distance between two uniformly
//! random points is known in closed form; this crate evaluates it (moments,
//! moment-generating function, pdf, cdf, quantiles, ball volumes and sphere
//! areas) and cross-checks it against a Monte Carlo engine that works on any
//! `L(n;m)`.
//!
//! Modules:
//! - [`geometry`]: the 3-sphere as SU(2), join coordinates, the group action
//!   and quotient distances.
//! - [`specfun`]: Pochhammer symbols, `pFq` series, sine and cosine integrals.
//! - [`analytic`]: moments of distance by several independent methods and the
//!   closed-form distribution functions.
//! - [`montecarlo`]: Haar sampling, parallel reproducible distance sampling,
//!   histograms and Kolmogorov–Smirnov tests.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration.

pub mod analytic;
mod ddouble;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::{JoinCoordinates, LensSpace, SpherePoint};
