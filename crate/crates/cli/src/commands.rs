use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rootcloud_core::cy::{filter, poincare_cy3, poincare_cy4, Filterable};
use rootcloud_core::ensembles::sample;
use rootcloud_core::ingest::{self, HodgeKind, HodgeRecord};
use rootcloud_core::maps::to_strip;
use rootcloud_core::polyroot::{mahler_measure, mahler_measure_quadrature, roots};
use rootcloud_core::toric::{self, CoefficientSampler};
use rootcloud_core::{Bounds, ComplexPoint, EnsembleSpec, Family, HodgeCY3, HodgeCY4, IntPolynomial, Sidecar};

use crate::args::{CyArgs, EnsembleArgs, MahlerArgs, ToricArgs, ToricMode};
use crate::pipeline::{
    add_output_keys, base_sidecar, check_output, check_outputs, pool, print_summary, run_ordered, PointSink, Progress,
};

fn plane_bounds() -> Bounds {
    Bounds::symmetric(2.5).expect("valid bounds")
}

fn strip_bounds() -> Bounds {
    Bounds::new(-0.5, 1.5, -1.0, 1.0).expect("valid bounds")
}

/// Outcome of solving one polynomial for a point cloud.
struct Solved {
    points: Vec<(f64, f64)>,
    failed: bool,
    strip_skipped: u64,
}

fn solve(p: &IntPolynomial, strip: bool) -> Solved {
    let rs = match roots(p) {
        Ok(rs) => rs,
        Err(_) => return Solved { points: Vec::new(), failed: true, strip_skipped: 0 },
    };
    let mut skipped = 0;
    let points = rs
        .roots
        .iter()
        .filter_map(|&r: &ComplexPoint| {
            let z = if strip {
                match to_strip(r) {
                    Ok(z) => z,
                    Err(_) => {
                        skipped += 1;
                        return None;
                    }
                }
            } else {
                r
            };
            Some((z.re, z.im))
        })
        .collect();
    Solved { points, failed: false, strip_skipped: skipped }
}

pub fn ensemble(a: &EnsembleArgs, quiet: bool) -> Result<()> {
    let family = match (a.family, a.no_linear) {
        (Family::MonicPalindromic, true) => Family::MonicPalindromicNoLinear,
        (f @ (Family::Free | Family::LittlewoodSet), true) => {
            bail!("--no-linear applies to palindromic families, not --family {f}")
        }
        (f, _) => f,
    };
    let mut spec = EnsembleSpec::new(family, a.degree, a.count, a.min, a.max, a.seed);
    spec.fix_constant_one = a.fix_constant_one;
    spec.require_leading_nonzero = !a.allow_zero_leading;
    spec.validate().map_err(|e| anyhow!("invalid ensemble (--family/--degree/--min/--max): {e}"))?;
    check_outputs(&a.out)?;
    let pool = pool(a.out.workers)?;
    let bounds = if a.strip { strip_bounds() } else { plane_bounds() };

    let mut sink = PointSink::open(&a.out, bounds)?;
    let (mut failed, mut skipped) = (0u64, 0u64);
    let progress = Progress::new("ensemble", a.count, quiet);
    run_ordered(
        &pool,
        a.count,
        &progress,
        |i| {
            let p = sample(&spec, i).expect("validated spec");
            solve(&p, a.strip)
        },
        |batch| {
            for s in batch {
                failed += s.failed as u64;
                skipped += s.strip_skipped;
                sink.push(&s.points)?;
            }
            Ok(())
        },
    )?;

    let mut meta = base_sidecar("ensemble");
    meta.set("family", family)
        .set("degree", a.degree)
        .set("count", a.count)
        .set("min", a.min)
        .set("max", a.max)
        .set("seed", a.seed)
        .set("fix_constant_one", a.fix_constant_one)
        .set("require_leading_nonzero", !a.allow_zero_leading)
        .set("strip", a.strip)
        .set("roots", sink.points)
        .set("solver_failures", failed)
        .set("strip_poles_skipped", skipped);
    add_output_keys(&mut meta, &a.out, bounds);
    sink.finish(&a.out, "roots", &meta)?;
    print_summary(&meta, &["count", "roots", "solver_failures", "strip_poles_skipped"]);
    if !quiet {
        eprintln!("elapsed_s={:.2}", progress.elapsed());
    }
    Ok(())
}

/// Scatter columns used for the Hodge-number plots.
pub trait Scatter {
    const HEADER: &'static str;
    fn row(&self) -> String;
    fn poincare(&self) -> IntPolynomial;
}

impl Scatter for HodgeCY3 {
    const HEADER: &'static str = "h11-h21,h11+h21";
    fn row(&self) -> String {
        format!("{},{}", self.h11 as i128 - self.h21 as i128, self.h11 as i128 + self.h21 as i128)
    }
    fn poincare(&self) -> IntPolynomial {
        poincare_cy3(self)
    }
}

impl Scatter for HodgeCY4 {
    const HEADER: &'static str = "h11-h31,h11+h31,h11-h21,h11+h21";
    fn row(&self) -> String {
        let (a, b, c) = (self.h11 as i128, self.h21 as i128, self.h31 as i128);
        format!("{},{},{},{}", a - c, a + c, a - b, a + b)
    }
    fn poincare(&self) -> IntPolynomial {
        poincare_cy4(self)
    }
}

fn write_hodge_scatter<R: Scatter>(records: &[R], path: &Path, meta: &Sidecar) -> Result<()> {
    let mut out = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    writeln!(out, "{}", R::HEADER)?;
    for r in records {
        writeln!(out, "{}", r.row())?;
    }
    out.flush()?;
    let mut side = meta.clone();
    side.set("format", "csv").set("columns", R::HEADER).set("rows", records.len());
    side.write_for(path)?;
    Ok(())
}

pub fn cy<R>(a: &CyArgs, kind: HodgeKind, quiet: bool) -> Result<()>
where
    R: HodgeRecord + Filterable + Scatter + Clone + Send + Sync,
{
    if let Some(pred) = a.filter {
        // Reject a predicate of the wrong kind before reading anything.
        filter::<R>(&[], pred).map_err(|e| anyhow!("--filter {pred}: {e}"))?;
    }
    check_outputs(&a.out)?;
    if let Some(p) = &a.hodge_csv {
        check_output("--hodge-csv", p)?;
    }
    let pool = pool(a.out.workers)?;
    let file = ingest::parse::<R>(&a.input)?;
    let base = if a.keep_duplicates { file.records.clone() } else { file.distinct() };
    let records = match a.filter {
        Some(pred) => filter(&base, pred)?,
        None => base,
    };

    let bounds = if a.strip { strip_bounds() } else { plane_bounds() };
    let mut sink = PointSink::open(&a.out, bounds)?;
    let (mut failed, mut skipped) = (0u64, 0u64);
    let label = match kind {
        HodgeKind::Cy3 => "cy3",
        HodgeKind::Cy4 => "cy4",
    };
    let progress = Progress::new(label, records.len() as u64, quiet);
    run_ordered(
        &pool,
        records.len() as u64,
        &progress,
        |i| solve(&records[i as usize].poincare(), a.strip),
        |batch| {
            for s in batch {
                failed += s.failed as u64;
                skipped += s.strip_skipped;
                sink.push(&s.points)?;
            }
            Ok(())
        },
    )?;

    let mut meta = base_sidecar(label);
    meta.set("input", a.input.display())
        .set("raw_count", file.raw_count)
        .set("distinct_count", file.distinct_count)
        .set("keep_duplicates", a.keep_duplicates)
        .set("filter", a.filter.map(|p| p.to_string()).unwrap_or_else(|| "none".into()))
        .set("records", records.len())
        .set("strip", a.strip)
        .set("roots", sink.points)
        .set("solver_failures", failed)
        .set("strip_poles_skipped", skipped);
    add_output_keys(&mut meta, &a.out, bounds);
    sink.finish(&a.out, "roots", &meta)?;
    if let Some(p) = &a.hodge_csv {
        write_hodge_scatter(&records, p, &meta)?;
    }
    print_summary(&meta, &["raw_count", "distinct_count", "records", "roots", "solver_failures"]);
    Ok(())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || anyhow!("--z0 {s:?}: expected an integer or p/q");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        bail!("--z0 {s:?}: zero denominator");
    }
    Ok(BigRational::new(n, d))
}

pub fn toric(a: &ToricArgs, quiet: bool) -> Result<()> {
    let diagrams = match &a.catalog {
        Some(p) => toric::load_catalog(p)?,
        None => toric::parse_catalog(toric::DEFAULT_CATALOG)?,
    };
    let d = toric::find(&diagrams, &a.diagram)?;
    let sampler = CoefficientSampler { count: a.count, coeff_min: a.min, coeff_max: a.max, seed: a.seed };
    sampler.validate().map_err(|e| anyhow!("--min/--max: {e}"))?;
    let z0 = match a.mode {
        ToricMode::Slice => Some(parse_rational(&a.z0)?),
        ToricMode::Critical => None,
    };
    check_outputs(&a.out)?;
    let pool = pool(a.out.workers)?;
    let progress = Progress::new("toric", a.count, quiet);

    let mut meta = base_sidecar("toric");
    meta.set("diagram", &d.name)
        .set("points", d.points.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" "))
        .set("mode", format!("{:?}", a.mode).to_lowercase())
        .set("count", a.count)
        .set("min", a.min)
        .set("max", a.max)
        .set("seed", a.seed);
    let (bounds, sink) = match &z0 {
        None => {
            let out = pool.install(|| toric::critical_point_sweep(&d, &sampler))?;
            let bounds = Bounds::symmetric(10.0).expect("valid bounds");
            let mut sink = PointSink::open(&a.out, bounds)?;
            sink.push(out.cloud.points())?;
            meta.set("critical_points", out.cloud.len())
                .set("degenerate_draws", out.degenerate)
                .set("zero_polynomial_draws", out.zero_polynomial)
                .set("failed_draws", out.failed)
                .set("discarded_complex", out.discarded_complex)
                .set("rejected_unverified", out.rejected_unverified);
            (bounds, sink)
        }
        Some(z0) => {
            let out = pool.install(|| toric::slice_root_sweep(&d, &sampler, z0))?;
            let bounds = Bounds::symmetric(3.0).expect("valid bounds");
            let mut sink = PointSink::open(&a.out, bounds)?;
            let pts: Vec<(f64, f64)> = out.roots.iter().map(|r| (r.re, r.im)).collect();
            sink.push(&pts)?;
            meta.set("z0", z0)
                .set("roots", out.roots.len())
                .set("degenerate_draws", out.degenerate)
                .set("failed_draws", out.failed);
            (bounds, sink)
        }
    };
    progress.update(a.count);
    add_output_keys(&mut meta, &a.out, bounds);
    let label = if z0.is_some() { "slice roots" } else { "critical points" };
    sink.finish(&a.out, label, &meta)?;
    print_summary(
        &meta,
        &["count", "critical_points", "roots", "degenerate_draws", "zero_polynomial_draws", "failed_draws"],
    );
    Ok(())
}

fn parse_coefficients(text: &str, origin: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let c: BigInt = tok.parse().map_err(|_| anyhow!("{origin}: {tok:?} is not an integer"))?;
            coeffs.push(c);
        }
    }
    if coeffs.is_empty() {
        bail!("{origin}: no coefficients given");
    }
    Ok(IntPolynomial::new(coeffs))
}

pub fn mahler(a: &MahlerArgs) -> Result<()> {
    let p = match (&a.coeffs, &a.file) {
        (Some(c), _) => parse_coefficients(c, "--coeffs")?,
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f).with_context(|| format!("--file {}", f.display()))?;
            parse_coefficients(&text, &f.display().to_string())?
        }
        (None, None) => bail!("one of --coeffs or --file is required"),
    };
    let m = mahler_measure(&p)?;
    println!("polynomial = {p}");
    println!("mahler_measure = {m:.15}");
    if let Some(nodes) = a.quadrature {
        if nodes == 0 {
            bail!("--quadrature needs at least one node");
        }
        let q = mahler_measure_quadrature(&p, nodes)?;
        println!("quadrature({nodes}) = {q:.15}");
        println!("relative_difference = {:.3e}", (m - q).abs() / m.max(f64::MIN_POSITIVE));
    }
    Ok(())
}
