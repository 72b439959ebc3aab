//! Closed-form distance statistics on the homogeneous lens spaces `L(n;1)`.

mod distribution;
mod moments;

pub use distribution::{ball_volume, cdf, mgf, pdf, quantile, sphere_area, DistributionSpec};
pub use moments::{
    distance_expectation_quadrature, moment, moment_asymptotic, moment_closed_form,
    moment_finite_sum, moment_large_n_limit, moment_negative_one, moment_quadrature,
    moment_recurrence, MomentMethod, MomentResult, K_MAX,
};
