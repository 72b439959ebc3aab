use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use lenslab::analytic::{moment, DistributionSpec, MomentMethod, MomentResult};
use lenslab::montecarlo::{
    build_histogram, ks_binned, ks_statistic, sample_distances, DistanceHistogram, EstimateResult,
    KsReport, OrbitSearch, SampleConfig,
};
use lenslab::LensSpace;
use serde::Serialize;

use crate::args::*;
use crate::input::{self, Distances};
use crate::output::{emit, json, num, reject_svg, write_to, Table};
use crate::svg::{Bar, Curve, Plot};

pub const STATISTICAL_FAILURE: u8 = 2;

const EXACT_METHODS: [MomentMethod; 4] = [
    MomentMethod::Recurrence,
    MomentMethod::FiniteSum,
    MomentMethod::ClosedForm,
    MomentMethod::Quadrature,
];

fn parse_k_range(s: &str) -> Result<Vec<i32>> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s, s),
    };
    let lo: i32 = lo.parse().with_context(|| format!("bad k `{lo}`"))?;
    let hi: i32 = hi.parse().with_context(|| format!("bad k `{hi}`"))?;
    if lo > hi {
        bail!("empty k range {s}");
    }
    Ok((lo..=hi).collect())
}

/// `start:stop:count` with both endpoints included.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts[..] else {
        bail!("grid must be start:stop:count, got `{s}`");
    };
    let a: f64 = a
        .trim()
        .parse()
        .with_context(|| format!("bad grid start `{a}`"))?;
    let b: f64 = b
        .trim()
        .parse()
        .with_context(|| format!("bad grid stop `{b}`"))?;
    let c: usize = c
        .trim()
        .parse()
        .with_context(|| format!("bad grid count `{c}`"))?;
    if c == 0 || !a.is_finite() || !b.is_finite() {
        bail!("grid needs finite endpoints and a positive count");
    }
    if c == 1 {
        return Ok(vec![a]);
    }
    Ok((0..c)
        .map(|i| {
            if i + 1 == c {
                b
            } else {
                a + (b - a) * i as f64 / (c - 1) as f64
            }
        })
        .collect())
}

pub fn moments(args: &MomentsArgs) -> Result<ExitCode> {
    reject_svg(&args.out, "moments")?;
    let ks = parse_k_range(&args.k)?;
    let method = match args.method {
        MethodArg::Recurrence => Some(MomentMethod::Recurrence),
        MethodArg::FiniteSum => Some(MomentMethod::FiniteSum),
        MethodArg::ClosedForm => Some(MomentMethod::ClosedForm),
        MethodArg::Quadrature => Some(MomentMethod::Quadrature),
        MethodArg::Asymptotic => Some(MomentMethod::Asymptotic),
        MethodArg::LargeNLimit => Some(MomentMethod::LargeNLimit),
        MethodArg::All => None,
    };
    let content = match method {
        Some(method) => {
            let rows = ks
                .iter()
                .map(|&k| {
                    moment(args.n, k, method)
                        .with_context(|| format!("I_({},{k}) by {method}", args.n))
                })
                .collect::<Result<Vec<MomentResult>>>()?;
            if args.out.format == Format::Json {
                json(&rows)?
            } else {
                let mut t = Table::new(vec!["n", "k", "method", "value", "abs_error_bound"]);
                for r in &rows {
                    t.push(vec![
                        r.n.to_string(),
                        r.k.to_string(),
                        r.method.to_string(),
                        num(r.value),
                        num(r.abs_error_bound),
                    ]);
                }
                t.to_csv(&[])
            }
        }
        None => moments_all(args.n, &ks, args.out.format)?,
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AllMethodsRow {
    n: u32,
    k: i32,
    recurrence: Option<f64>,
    finite_sum: Option<f64>,
    closed_form: Option<f64>,
    quadrature: Option<f64>,
    max_discrepancy: f64,
}

/// Every exact method that accepts `(n, k)`, side by side.
fn moments_all(n: u32, ks: &[i32], format: Format) -> Result<String> {
    let mut rows = Vec::new();
    for &k in ks {
        let values: Vec<Option<f64>> = EXACT_METHODS
            .iter()
            .map(|&m| moment(n, k, m).ok().map(|r| r.value))
            .collect();
        let present: Vec<f64> = values.iter().flatten().copied().collect();
        if present.is_empty() {
            // surface the most informative error
            moment(n, k, MomentMethod::Quadrature).with_context(|| format!("I_({n},{k})"))?;
        }
        let hi = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = present.iter().copied().fold(f64::INFINITY, f64::min);
        rows.push(AllMethodsRow {
            n,
            k,
            recurrence: values[0],
            finite_sum: values[1],
            closed_form: values[2],
            quadrature: values[3],
            max_discrepancy: hi - lo,
        });
    }
    if format == Format::Json {
        return json(&rows);
    }
    let cell = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut t = Table::new(vec![
        "n",
        "k",
        "recurrence",
        "finite_sum",
        "closed_form",
        "quadrature",
        "max_discrepancy",
    ]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.k.to_string(),
            cell(r.recurrence),
            cell(r.finite_sum),
            cell(r.closed_form),
            cell(r.quadrature),
            num(r.max_discrepancy),
        ]);
    }
    Ok(t.to_csv(&[]))
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Pdf => "pdf",
            Which::Cdf => "cdf",
            Which::Mgf => "mgf",
            Which::Quantile => "quantile",
        }
    }

    fn default_grid(self) -> &'static str {
        match self {
            Which::Pdf | Which::Cdf => "0:1.5707963267948966:101",
            Which::Mgf => "-5:5:101",
            Which::Quantile => "0:1:101",
        }
    }
}

#[derive(Serialize)]
struct Curve1 {
    n: u32,
    which: &'static str,
    x: Vec<f64>,
    value: Vec<f64>,
}

fn histogram_bars(h: &DistanceHistogram) -> Vec<Bar> {
    h.density()
        .iter()
        .enumerate()
        .map(|(i, &d)| Bar {
            x0: h.bin_edges[i],
            x1: h.bin_edges[i + 1],
            h: d,
        })
        .collect()
}

pub fn distribution(args: &DistributionArgs) -> Result<ExitCode> {
    let dist = DistributionSpec::new(args.n)?;
    let xs = if args.x.is_empty() {
        parse_grid(args.grid.as_deref().unwrap_or(args.which.default_grid()))?
    } else {
        args.x.clone()
    };
    let values = xs
        .iter()
        .map(|&x| {
            let v = match args.which {
                Which::Pdf => dist.pdf(x),
                Which::Cdf => dist.cdf(x),
                Which::Mgf => Ok(dist.mgf(x)),
                Which::Quantile => dist.quantile(x),
            };
            v.with_context(|| format!("{} at {x}", args.which.name()))
        })
        .collect::<Result<Vec<f64>>>()?;
    if args.histogram.is_some() && args.out.format != Format::Svg {
        bail!("--histogram is only used with --format svg");
    }
    let content = match args.out.format {
        Format::Csv => {
            let mut t = Table::new(vec!["x", args.which.name()]);
            for (x, v) in xs.iter().zip(&values) {
                t.push(vec![num(*x), num(*v)]);
            }
            t.to_csv(&[])
        }
        Format::Json => json(&Curve1 {
            n: args.n,
            which: args.which.name(),
            x: xs,
            value: values,
        })?,
        Format::Svg => {
            let bars = match &args.histogram {
                Some(path) => match input::read(path)? {
                    Distances::Histogram(h) => histogram_bars(&h),
                    Distances::Samples(s) => histogram_bars(&build_histogram(&s, 100)?),
                },
                None => Vec::new(),
            };
            Plot {
                title: format!("{} of the distance on L({};1)", args.which.name(), args.n),
                x_label: if args.which == Which::Quantile {
                    "p"
                } else {
                    "x"
                }
                .into(),
                y_label: args.which.name().into(),
                curves: vec![Curve {
                    points: xs.into_iter().zip(values).collect(),
                    color: "#d62728",
                    label: format!("{} n={}", args.which.name(), args.n),
                }],
                bars,
            }
            .render()
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BallRow {
    r: f64,
    volume: f64,
    area: f64,
}

pub fn ballvol(args: &BallvolArgs) -> Result<ExitCode> {
    let dist = DistributionSpec::new(args.n)?;
    let rows = parse_grid(&args.r_grid)?
        .into_iter()
        .map(|r| {
            Ok(BallRow {
                r,
                volume: dist
                    .ball_volume(r)
                    .with_context(|| format!("ball volume at r = {r}"))?,
                area: dist
                    .sphere_area(r)
                    .with_context(|| format!("sphere area at r = {r}"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let content = match args.out.format {
        Format::Csv => {
            let mut t = Table::new(vec!["r", "volume", "area"]);
            for b in &rows {
                t.push(vec![num(b.r), num(b.volume), num(b.area)]);
            }
            t.to_csv(&[])
        }
        Format::Json => json(&rows)?,
        Format::Svg => Plot {
            title: format!("Balls in L({};1)", args.n),
            x_label: "r".into(),
            y_label: "volume, area".into(),
            curves: vec![
                Curve {
                    points: rows.iter().map(|b| (b.r, b.volume)).collect(),
                    color: "#1f77b4",
                    label: "volume".into(),
                },
                Curve {
                    points: rows.iter().map(|b| (b.r, b.area)).collect(),
                    color: "#ff7f0e",
                    label: "area".into(),
                },
            ],
            bars: Vec::new(),
        }
        .render(),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

/// The estimate as written to files; run time is reported on stderr only so
/// repeated runs produce identical files.
#[derive(Serialize)]
struct EstimateOut {
    mean: f64,
    std_error: f64,
    #[serde(rename = "N")]
    n: usize,
}

#[derive(Serialize)]
struct SimulationOut<'a> {
    histogram: &'a DistanceHistogram,
    estimate: EstimateOut,
}

fn histogram_svg(h: &DistanceHistogram, space: &LensSpace) -> String {
    let mut curves = Vec::new();
    if space.homogeneous() && space.n() >= 2 {
        if let Ok(dist) = DistributionSpec::new(space.n()) {
            let points = (0..=400)
                .map(|i| {
                    let x = FRAC_PI_2 * f64::from(i) / 400.0;
                    (x, dist.pdf(x).unwrap_or(f64::NAN))
                })
                .collect();
            curves.push(Curve {
                points,
                color: "#d62728",
                label: format!("f_{} (analytic)", space.n()),
            });
        }
    }
    Plot {
        title: format!("Distances on {space}, N = {}", h.total),
        x_label: "distance".into(),
        y_label: "density".into(),
        curves,
        bars: histogram_bars(h),
    }
    .render()
}

pub fn simulate(args: &SimulateArgs) -> Result<ExitCode> {
    let space = LensSpace::new(args.n, args.m)?;
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let orbit_search = if args.double_loop {
        OrbitSearch::DoubleLoop
    } else {
        OrbitSearch::SingleLoop
    };
    let config = SampleConfig::new(space, args.samples, args.seed)
        .with_workers(workers)
        .with_algorithm(args.algorithm.into())
        .with_orbit_search(orbit_search)
        .with_generator(args.generator.into());
    let (samples, estimate): (Vec<f64>, EstimateResult) = sample_distances(&config)?;
    let histogram = build_histogram(&samples, args.bins)?.with_config(config);
    eprintln!(
        "{space}: mean {:.6} (SE {:.2e}) from {} samples in {:.2} s",
        estimate.mean, estimate.std_error, estimate.n, estimate.elapsed_seconds
    );

    let content = match args.out.format {
        Format::Csv => {
            let comments = vec![
                format!("space=L({};{})", space.n(), space.m()),
                format!("N={}", estimate.n),
                format!("seed={}", config.seed),
                format!("algorithm={}", config.algorithm.name()),
                format!("mean={}", num(estimate.mean)),
                format!("std_error={}", num(estimate.std_error)),
            ];
            let mut t = Table::new(vec!["bin_lower", "bin_upper", "count", "density"]);
            for (i, d) in histogram.density().into_iter().enumerate() {
                t.push(vec![
                    num(histogram.bin_edges[i]),
                    num(histogram.bin_edges[i + 1]),
                    histogram.counts[i].to_string(),
                    num(d),
                ]);
            }
            t.to_csv(&comments)
        }
        Format::Json => json(&SimulationOut {
            histogram: &histogram,
            estimate: EstimateOut {
                mean: estimate.mean,
                std_error: estimate.std_error,
                n: estimate.n,
            },
        })?,
        Format::Svg => histogram_svg(&histogram, &space),
    };
    emit(&args.out, &content)?;
    if let Some(path) = &args.svg {
        write_to(Some(path), &histogram_svg(&histogram, &space))?;
    }
    if let Some(path) = &args.samples_out {
        let mut t = Table::new(vec!["distance"]);
        t.rows = samples.iter().map(|&x| vec![num(x)]).collect();
        write_to(Some(path), &t.to_csv(&[]))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CompareOut {
    #[serde(flatten)]
    report: KsReport,
    mode: &'static str,
}

pub fn compare(args: &CompareArgs) -> Result<ExitCode> {
    reject_svg(&args.out, "compare")?;
    let space = LensSpace::new(args.n, args.m)?;
    let (report, mode) = match input::read(&args.file)? {
        Distances::Samples(s) => (ks_statistic(&s, &space, args.alpha)?, "samples"),
        Distances::Histogram(h) => (ks_binned(&h, &space, args.alpha)?, "binned"),
    };
    let content = match args.out.format {
        Format::Json => json(&CompareOut { report, mode })?,
        _ => {
            let mut t = Table::new(vec![
                "statistic",
                "threshold",
                "alpha",
                "effective_n",
                "passed",
                "mode",
            ]);
            t.push(vec![
                num(report.statistic),
                num(report.threshold),
                num(report.alpha),
                num(report.effective_n),
                report.passed.to_string(),
                mode.to_string(),
            ]);
            t.to_csv(&[])
        }
    };
    emit(&args.out, &content)?;
    eprintln!(
        "KS against F_{}: D = {:.3e}, threshold {:.3e} at alpha = {} ({})",
        args.n,
        report.statistic,
        report.threshold,
        args.alpha,
        if report.passed { "pass" } else { "FAIL" }
    );
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(STATISTICAL_FAILURE)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("3").unwrap(), vec![3]);
        assert_eq!(parse_k_range("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_k_range("-1..=1").unwrap(), vec![-1, 0, 1]);
        assert!(parse_k_range("3..1").is_err());
        assert!(parse_k_range("a").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2:5:1").unwrap(), vec![2.0]);
        assert_eq!(
            *parse_grid("0:1.5707963267948966:7")
                .unwrap()
                .last()
                .unwrap(),
            FRAC_PI_2
        );
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:inf:3").is_err());
    }
}
