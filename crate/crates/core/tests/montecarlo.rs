use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use lenslab::analytic::{moment_closed_form, DistributionSpec};
use lenslab::geometry::{sphere_distance, LensSpace, SpherePoint};
use lenslab::montecarlo::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn space(n: u32, m: u32) -> LensSpace {
    LensSpace::new(n, m).unwrap()
}

#[test]
fn haar_coordinates_have_uniform_sphere_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let draws: Vec<[f64; 4]> = (0..200_000)
        .map(|_| rand_su2(&mut rng).cartesian())
        .collect();
    for c in 0..4 {
        let xs: Vec<f64> = draws.iter().map(|p| p[c]).collect();
        let m = estimate(&xs).unwrap();
        assert!(m.mean.abs() < 5.0 * m.std_error, "coordinate {c} mean");
        let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let v = estimate(&sq).unwrap();
        assert!(
            (v.mean - 0.25).abs() < 5.0 * v.std_error,
            "coordinate {c} variance"
        );
    }
    let to_fixed: Vec<f64> = draws
        .iter()
        .map(|p| {
            let q = SpherePoint::from_cartesian(p[0], p[1], p[2], p[3]).unwrap();
            sphere_distance(&q, &SpherePoint::identity())
        })
        .collect();
    let r = estimate(&to_fixed).unwrap();
    assert!((r.mean - FRAC_PI_2).abs() < 3.0 * r.std_error);
}

#[test]
fn sphere_mean_is_right_angle() {
    let (_, r) = sample_distances(&SampleConfig::new(space(1, 1), 100_000, 4)).unwrap();
    assert!((r.mean - FRAC_PI_2).abs() < 3.0 * r.std_error);
}

#[test]
fn first_and_second_moments_match_closed_form() {
    for n in 2..=8 {
        let cfg = SampleConfig::new(space(n, 1), 100_000, 1000 + u64::from(n));
        let (s, r) = sample_distances(&cfg).unwrap();
        let i1 = moment_closed_form(n, 1).unwrap().value;
        assert!(
            (r.mean - i1).abs() < 3.0 * r.std_error,
            "n={n}: {} vs {i1}",
            r.mean
        );
        let sq: Vec<f64> = s.iter().map(|d| d * d).collect();
        let r2 = estimate(&sq).unwrap();
        let i2 = moment_closed_form(n, 2).unwrap().value;
        assert!(
            (r2.mean - i2).abs() < 3.0 * r2.std_error,
            "n={n}: {} vs {i2}",
            r2.mean
        );
        assert!(s.iter().all(|&d| d <= FRAC_PI_2 + 1e-12));
    }
}

#[test]
fn fast_and_general_algorithms_agree() {
    for n in [3, 6] {
        let cfg = SampleConfig::new(space(n, 1), 100_000, 77);
        let (general, _) = sample_distances(&cfg).unwrap();
        let (fast, _) = sample_distances(
            &cfg.with_algorithm(Algorithm::HomogeneousFast)
                .with_workers(3),
        )
        .unwrap();
        assert!(ks_two_sample(&general, &fast, 0.01).unwrap().passed);
    }
}

#[test]
fn haar_generators_agree() {
    let cfg = SampleConfig::new(space(5, 2), 100_000, 8);
    let (gs, _) = sample_distances(&cfg).unwrap();
    let (g4, _) = sample_distances(&cfg.with_generator(HaarGenerator::NormalizedGaussian)).unwrap();
    assert_ne!(gs, g4);
    assert!(ks_two_sample(&gs, &g4, 0.01).unwrap().passed);
}

#[test]
fn quantile_samples_pass_one_sample_test() {
    let d = DistributionSpec::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s: Vec<f64> = (0..100_000)
        .map(|_| d.quantile(rand::Rng::random::<f64>(&mut rng)).unwrap())
        .collect();
    assert!(ks_statistic(&s, &space(5, 1), 0.01).unwrap().passed);
    assert!(ks_statistic(&s, &space(5, 4), 0.01).unwrap().passed);
    assert!(!ks_statistic(&s, &space(3, 1), 0.01).unwrap().passed);
}

#[test]
fn fixed_point_on_homogeneous_space_follows_analytic_cdf() {
    let s = fixed_point_distances(&space(5, 1), 0.0, 100_000, 5, 2).unwrap();
    let dist = DistributionSpec::new(5).unwrap();
    let d = ks_one_sample(&s, |x| dist.cdf(x.min(FRAC_PI_2)).unwrap()).unwrap();
    assert!(d < 1.63 / (s.len() as f64).sqrt());
    let t = fixed_point_distances(&space(5, 1), FRAC_PI_4, 100_000, 6, 2).unwrap();
    assert!(ks_two_sample(&s, &t, 0.01).unwrap().passed);
}

#[test]
fn reproducible_across_runs_and_workers() {
    let cfg = SampleConfig::new(space(7, 3), 20_001, 0xDEAD_BEEF);
    let (a, _) = sample_distances(&cfg).unwrap();
    let (b, _) = sample_distances(&cfg).unwrap();
    assert_eq!(a, b);
    for w in [2, 5, 8] {
        let (c, _) = sample_distances(&cfg.with_workers(w)).unwrap();
        assert_eq!(a, c);
    }
    let (other, _) = sample_distances(&SampleConfig { seed: 1, ..cfg }).unwrap();
    assert_ne!(a, other);
}

#[test]
fn histogram_of_samples() {
    let cfg = SampleConfig::new(space(5, 2), 50_000, 2);
    let (s, _) = sample_distances(&cfg).unwrap();
    let h = build_histogram(&s, 64).unwrap().with_config(cfg);
    assert_eq!(h.counts.iter().sum::<u64>(), 50_000);
    let max = s.iter().copied().fold(0.0, f64::max);
    assert!(*h.bin_edges.last().unwrap() >= max);
    assert_eq!(h.config, Some(cfg));
}
