use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use rootcloud_core::render::{write_png, CsvStream};
use rootcloud_core::{Bounds, DensityRaster, Sidecar};

use crate::args::OutputArgs;

/// Items per ordered batch; also the progress granularity.
pub const CHUNK: u64 = 1 << 14;

pub fn pool(workers: Option<u32>) -> Result<rayon::ThreadPool> {
    let n = match workers {
        Some(n) => n as usize,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .context("building worker pool")
}

/// Every output path must be creatable: its directory has to exist and the
/// path must not be a directory. Checked before any work starts.
pub fn check_output(flag: &str, path: &Path) -> Result<()> {
    if path.is_dir() {
        bail!("{flag} {}: is a directory", path.display());
    }
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        bail!("{flag} {}: directory {} does not exist", path.display(), parent.display());
    }
    Ok(())
}

pub fn check_outputs(out: &OutputArgs) -> Result<()> {
    if let Some(p) = &out.csv {
        check_output("--csv", p)?;
    }
    if let Some(p) = &out.png {
        check_output("--png", p)?;
    }
    if let (Some(a), Some(b)) = (&out.csv, &out.png) {
        if a == b {
            bail!("--csv and --png name the same file {}", a.display());
        }
    }
    Ok(())
}

pub struct Progress {
    label: &'static str,
    total: u64,
    start: Instant,
    quiet: bool,
}

impl Progress {
    pub fn new(label: &'static str, total: u64, quiet: bool) -> Self {
        Self { label, total, start: Instant::now(), quiet }
    }

    pub fn update(&self, done: u64) {
        if self.quiet {
            return;
        }
        let secs = self.start.elapsed().as_secs_f64();
        let rate = if secs > 0.0 { done as f64 / secs } else { 0.0 };
        eprintln!("{}: {done}/{} ({rate:.0}/s)", self.label, self.total);
    }

    pub fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// Destination for a point stream: optional CSV, optional raster.
pub struct PointSink {
    csv: Option<CsvStream>,
    raster: Option<DensityRaster>,
    pub points: u64,
}

impl PointSink {
    pub fn open(out: &OutputArgs, default_bounds: Bounds) -> Result<Self> {
        let raster = match &out.png {
            Some(_) => Some(DensityRaster::empty(out.bins.0, out.bins.1, out.bounds.unwrap_or(default_bounds))?),
            None => None,
        };
        let csv = match &out.csv {
            Some(p) => Some(CsvStream::create(p)?),
            None => None,
        };
        Ok(Self { csv, raster, points: 0 })
    }

    pub fn push(&mut self, pts: &[(f64, f64)]) -> Result<()> {
        if let Some(c) = self.csv.as_mut() {
            c.push_all(pts)?;
        }
        if let Some(r) = self.raster.as_mut() {
            for &(x, y) in pts {
                r.add(x, y);
            }
        }
        self.points += pts.len() as u64;
        Ok(())
    }

    pub fn finish(self, out: &OutputArgs, label: &str, meta: &Sidecar) -> Result<()> {
        if let (Some(c), Some(p)) = (self.csv, &out.csv) {
            c.finish(label, meta).with_context(|| format!("writing {}", p.display()))?;
        }
        if let (Some(r), Some(p)) = (self.raster, &out.png) {
            write_png(&r, p, out.scale, meta).with_context(|| format!("writing {}", p.display()))?;
        }
        Ok(())
    }
}

/// Runs `f` over `0..count` on `pool` in ordered batches, handing each batch
/// to `merge` in index order.
pub fn run_ordered<T, F, M>(pool: &rayon::ThreadPool, count: u64, progress: &Progress, f: F, mut merge: M) -> Result<()>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
    M: FnMut(Vec<T>) -> Result<()>,
{
    let mut start = 0;
    while start < count {
        let end = (start + CHUNK).min(count);
        let batch: Vec<T> = pool.install(|| (start..end).into_par_iter().map(&f).collect());
        merge(batch)?;
        start = end;
        progress.update(start);
    }
    Ok(())
}

/// Base sidecar: tool version and the command line.
pub fn base_sidecar(command: &str) -> Sidecar {
    let mut s = Sidecar::new();
    s.set("tool", concat!("rootcloud ", env!("CARGO_PKG_VERSION")))
        .set("command", std::env::args().collect::<Vec<_>>().join(" "))
        .set("subcommand", command);
    s
}

pub fn add_output_keys(s: &mut Sidecar, out: &OutputArgs, default_bounds: Bounds) {
    s.set("bins", format!("{}x{}", out.bins.0, out.bins.1))
        .set("bounds", out.bounds.unwrap_or(default_bounds))
        .set("scale", out.scale);
}

pub fn print_summary(s: &Sidecar, keys: &[&str]) {
    let mut err = std::io::stderr().lock();
    for k in keys {
        if let Some(v) = s.get(k) {
            let _ = writeln!(err, "{k}={v}");
        }
    }
}

