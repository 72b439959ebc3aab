//! Distance samples on `L(n;m)` and their mean estimates.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::haar::HaarGenerator;
use crate::error::{Error, Result};
use crate::geometry::{GroupAction, LensSpace, SpherePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Two Haar points per sample, distance minimized over the orbit.
    #[default]
    GeneralOrbit,
    /// One Haar point per sample, distance from its orbit to the identity.
    /// Valid only on homogeneous spaces.
    HomogeneousFast,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GeneralOrbit => "general_orbit",
            Self::HomogeneousFast => "homogeneous_fast",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general_orbit" | "general" => Ok(Self::GeneralOrbit),
            "homogeneous_fast" | "fast" => Ok(Self::HomogeneousFast),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm '{s}'"))),
        }
    }
}

/// How `general_orbit` minimizes over the orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitSearch {
    /// Fix one point and scan the `n` shifts of the other.
    #[default]
    SingleLoop,
    /// All `n²` pairs `(ω^j·A, ω^k·B)`.
    DoubleLoop,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub space: LensSpace,
    pub sample_count: usize,
    pub seed: u64,
    pub workers: usize,
    pub algorithm: Algorithm,
    #[serde(default)]
    pub orbit_search: OrbitSearch,
    #[serde(default)]
    pub generator: HaarGenerator,
}

impl SampleConfig {
    /// Single worker, `general_orbit`, literal Haar generator.
    pub fn new(space: LensSpace, sample_count: usize, seed: u64) -> Self {
        Self {
            space,
            sample_count,
            seed,
            workers: 1,
            algorithm: Algorithm::GeneralOrbit,
            orbit_search: OrbitSearch::SingleLoop,
            generator: HaarGenerator::GramSchmidt,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn with_orbit_search(mut self, orbit_search: OrbitSearch) -> Self {
        self.orbit_search = orbit_search;
        self
    }

    pub fn with_generator(mut self, generator: HaarGenerator) -> Self {
        self.generator = generator;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::InvalidArgument(
                "sample_count must be positive".into(),
            ));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be positive".into()));
        }
        if self.algorithm == Algorithm::HomogeneousFast && !self.space.homogeneous() {
            return Err(Error::InvalidArgument(format!(
                "homogeneous_fast requires a homogeneous space, got {}",
                self.space
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub mean: f64,
    /// Sample standard deviation over `√N`; zero when `N = 1`.
    pub std_error: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Mean and standard error with compensated two-pass summation.
/// `elapsed_seconds` is left at zero.
pub fn estimate(samples: &[f64]) -> Result<EstimateResult> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = samples.len();
    let mut total = NeumaierSum::default();
    samples.iter().for_each(|&x| total.add(x));
    let mean = total.value() / n as f64;
    let std_error = if n < 2 {
        0.0
    } else {
        let mut sq = NeumaierSum::default();
        samples
            .iter()
            .for_each(|&x| sq.add((x - mean) * (x - mean)));
        (sq.value() / (n - 1) as f64 / n as f64).sqrt()
    };
    Ok(EstimateResult {
        mean,
        std_error,
        n,
        elapsed_seconds: 0.0,
    })
}

fn sample_rng(base: &ChaCha8Rng, index: usize) -> ChaCha8Rng {
    let mut rng = base.clone();
    rng.set_stream(index as u64);
    rng
}

/// Evaluates `draw` on the stream of every index in `0..count`, spread over
/// `workers` threads, and returns the values in index order.
fn run_indexed<F>(count: usize, seed: u64, workers: usize, draw: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let base = ChaCha8Rng::seed_from_u64(seed);
    let workers = workers.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count)
            .map(|i| draw(&mut sample_rng(&base, i)))
            .collect();
    }
    let parts: Vec<Vec<f64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (base, draw) = (&base, &draw);
                scope.spawn(move || {
                    (w..count)
                        .step_by(workers)
                        .map(|i| draw(&mut sample_rng(base, i)))
                        .collect::<Vec<f64>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });
    let mut out = vec![0.0; count];
    for (w, part) in parts.into_iter().enumerate() {
        for (j, x) in part.into_iter().enumerate() {
            out[w + j * workers] = x;
        }
    }
    out
}

/// Draws `config.sample_count` distances. The list depends only on
/// `(space, sample_count, seed, algorithm, generator)`, not on `workers`.
pub fn sample_distances(config: &SampleConfig) -> Result<(Vec<f64>, EstimateResult)> {
    config.validate()?;
    let start = Instant::now();
    let action = GroupAction::new(config.space);
    let generator = config.generator;
    let samples = match (config.algorithm, config.orbit_search) {
        (Algorithm::HomogeneousFast, _) => {
            run_indexed(config.sample_count, config.seed, config.workers, |rng| {
                action.distance_to_identity(&generator.sample(rng))
            })
        }
        (Algorithm::GeneralOrbit, OrbitSearch::SingleLoop) => {
            run_indexed(config.sample_count, config.seed, config.workers, |rng| {
                let a = generator.sample(rng);
                let b = generator.sample(rng);
                action.orbit_distance(&a, &b)
            })
        }
        (Algorithm::GeneralOrbit, OrbitSearch::DoubleLoop) => {
            run_indexed(config.sample_count, config.seed, config.workers, |rng| {
                let a = generator.sample(rng);
                let b = generator.sample(rng);
                action.orbit_distance_double_loop(&a, &b)
            })
        }
    };
    let mut result = estimate(&samples)?;
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok((samples, result))
}

/// The base point with `α = cos φ`, `β = sin φ`.
pub fn fixed_point(phi: f64) -> SpherePoint {
    let (s, c) = phi.sin_cos();
    SpherePoint::from_cartesian(c, 0.0, s, 0.0).expect("unit vector")
}

/// Distances in `space` from `sample_count` Haar-random points to
/// [`fixed_point`]`(phi)`, with the same stream layout as
/// [`sample_distances`].
pub fn fixed_point_distances(
    space: &LensSpace,
    phi: f64,
    sample_count: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<f64>> {
    if sample_count == 0 {
        return Err(Error::InvalidArgument(
            "sample_count must be positive".into(),
        ));
    }
    if !phi.is_finite() {
        return Err(Error::Domain {
            what: "phi",
            value: phi,
            domain: "finite angle",
        });
    }
    let action = GroupAction::new(*space);
    let target = fixed_point(phi);
    Ok(run_indexed(sample_count, seed, workers.max(1), |rng| {
        action.orbit_distance(&super::haar::rand_su2(rng), &target)
    }))
}
