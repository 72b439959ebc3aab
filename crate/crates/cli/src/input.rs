//! Reading histogram and sample files written by `simulate`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use lenslab::montecarlo::DistanceHistogram;

pub enum Distances {
    Histogram(DistanceHistogram),
    Samples(Vec<f64>),
}

pub fn read(path: &Path) -> Result<Distances> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        parse_json(&text).with_context(|| format!("parsing {}", path.display()))
    } else {
        parse_csv(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

fn parse_json(text: &str) -> Result<Distances> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(h) = value.get_mut("histogram") {
        value = h.take();
    }
    let h: DistanceHistogram = serde_json::from_value(value)?;
    check_histogram(&h)?;
    Ok(Distances::Histogram(h))
}

fn check_histogram(h: &DistanceHistogram) -> Result<()> {
    if h.counts.is_empty() || h.bin_edges.len() != h.counts.len() + 1 {
        bail!("histogram needs bins + 1 edges");
    }
    if h.bin_edges.windows(2).any(|w| !(w[1] > w[0])) {
        bail!("histogram edges must increase");
    }
    if h.counts.iter().sum::<u64>() != h.total {
        bail!("histogram counts do not add up to total");
    }
    Ok(())
}

fn parse_csv(text: &str) -> Result<Distances> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().context("empty file")?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let col = |name: &str| columns.iter().position(|c| *c == name);
    let field = |line: &str, i: usize, lineno: usize| -> Result<f64> {
        let cell = line
            .split(',')
            .nth(i)
            .with_context(|| format!("line {}: missing column", lineno + 1))?;
        cell.trim()
            .parse::<f64>()
            .with_context(|| format!("line {}: bad number `{}`", lineno + 1, cell.trim()))
    };

    if let (Some(lo), Some(hi), Some(count)) = (col("bin_lower"), col("bin_upper"), col("count")) {
        let mut edges = Vec::new();
        let mut counts = Vec::new();
        for (i, line) in lines {
            let (a, b, c) = (
                field(line, lo, i)?,
                field(line, hi, i)?,
                field(line, count, i)?,
            );
            if edges.is_empty() {
                edges.push(a);
            }
            edges.push(b);
            if !(c >= 0.0 && c.fract() == 0.0) {
                bail!("line {}: count must be a nonnegative integer", i + 1);
            }
            counts.push(c as u64);
        }
        let h = DistanceHistogram {
            bin_edges: edges,
            total: counts.iter().sum(),
            counts,
            config: None,
        };
        check_histogram(&h)?;
        return Ok(Distances::Histogram(h));
    }
    let Some(c) = ["distance", "value", "quantile"]
        .iter()
        .find_map(|n| col(n))
    else {
        bail!("expected a histogram (bin_lower, bin_upper, count) or a `distance` column");
    };
    let samples = lines
        .map(|(i, l)| field(l, c, i))
        .collect::<Result<Vec<f64>>>()?;
    if samples.is_empty() {
        bail!("no samples");
    }
    Ok(Distances::Samples(samples))
}
