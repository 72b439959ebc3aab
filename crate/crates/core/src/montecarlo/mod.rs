//! Monte Carlo estimation of distance distributions on arbitrary `L(n;m)`.
//!
//! Randomness is reproducible and independent of the thread count: sample
//! `i` always draws from ChaCha8 stream `i` of the generator seeded with
//! `seed` (rand_chacha 0.9, `seed_from_u64`), with normals from the
//! `rand_distr` 0.5 ziggurat `StandardNormal`. Workers take indices
//! `i ≡ w (mod workers)` and results are merged back in index order, so the
//! sample list is bit-identical for any `workers`. Changing either crate
//! version may change the streams.

mod haar;
mod histogram;
mod ks;
mod sampling;

pub use haar::{rand_su2, rand_su2_gaussian4, HaarGenerator};
pub use histogram::{build_histogram, DistanceHistogram};
pub use ks::{
    kolmogorov_cdf, ks_binned, ks_critical_value, ks_one_sample, ks_statistic, ks_two_sample,
    KsReport,
};
pub use sampling::{
    estimate, fixed_point, fixed_point_distances, sample_distances, Algorithm, EstimateResult,
    OrbitSearch, SampleConfig,
};
