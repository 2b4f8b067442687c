//! Point clouds, density rasters and their on-disk formats.
//!
//! * CSV: header `x,y`, one point per line, shortest round-trip decimal form.
//! * PNG: 16-bit grayscale, top row = `ymax` edge, intensity scaled to the
//!   fullest bin.
//! * Sidecar: `<output>.meta.txt`, `key=value` lines.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("degenerate bounds x:[{xmin}, {xmax}] y:[{ymin}, {ymax}]")]
    DegenerateBounds { xmin: f64, xmax: f64, ymin: f64, ymax: f64 },
    #[error("bin counts must be positive")]
    ZeroBins,
    #[error("non-finite point ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("png encoding of {path}: {msg}")]
    Png { path: String, msg: String },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RenderError + '_ {
    move |source| RenderError::Io { path: path.display().to_string(), source }
}

/// Labelled list of finite 2-D points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud2D {
    pub label: String,
    points: Vec<(f64, f64)>,
}

impl PointCloud2D {
    pub fn new(label: impl Into<String>) -> Self {
        Self { label: label.into(), points: Vec::new() }
    }

    /// Rejects NaN and infinite coordinates.
    pub fn push(&mut self, x: f64, y: f64) -> Result<(), RenderError> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(RenderError::NonFinite(x, y));
        }
        self.points.push((x, y));
        Ok(())
    }

    /// Adds the finite points of `pts` and returns how many were skipped.
    pub fn extend_finite<I: IntoIterator<Item = (f64, f64)>>(&mut self, pts: I) -> usize {
        let mut skipped = 0;
        for (x, y) in pts {
            if x.is_finite() && y.is_finite() {
                self.points.push((x, y));
            } else {
                skipped += 1;
            }
        }
        skipped
    }

    pub fn extend_complex<'a, I: IntoIterator<Item = &'a Complex64>>(&mut self, pts: I) -> usize {
        self.extend_finite(pts.into_iter().map(|z| (z.re, z.im)))
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Bounds {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self, RenderError> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if !ok {
            return Err(RenderError::DegenerateBounds { xmin, xmax, ymin, ymax });
        }
        Ok(Self { xmin, xmax, ymin, ymax })
    }

    /// Square `[-r, r]^2`.
    pub fn symmetric(r: f64) -> Result<Self, RenderError> {
        Self::new(-r, r, -r, r)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.xmin, self.xmax, self.ymin, self.ymax)
    }
}

impl FromStr for Bounds {
    type Err = String;

    /// `xmin,xmax,ymin,ymax`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 {
            return Err(format!("expected xmin,xmax,ymin,ymax, got {} values", v.len()));
        }
        Bounds::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log1p,
}

impl Scale {
    fn apply(self, c: u64) -> f64 {
        match self {
            Scale::Linear => c as f64,
            Scale::Log1p => (c as f64).ln_1p(),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log1p => "log1p",
        })
    }
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Scale::Linear),
            "log1p" | "log" => Ok(Scale::Log1p),
            _ => Err(format!("unknown scale {s:?} (linear or log1p)")),
        }
    }
}

/// 2-D histogram. Bins are half-open `[lo, hi)` except the last one on each
/// axis, which also takes the upper edge.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityRaster {
    pub bins_x: usize,
    pub bins_y: usize,
    pub bounds: Bounds,
    /// Row-major by y bin (`iy * bins_x + ix`), `iy = 0` at `ymin`.
    counts: Vec<u64>,
    pub out_of_bounds: u64,
}

impl DensityRaster {
    pub fn empty(bins_x: usize, bins_y: usize, bounds: Bounds) -> Result<Self, RenderError> {
        if bins_x == 0 || bins_y == 0 {
            return Err(RenderError::ZeroBins);
        }
        Ok(Self { bins_x, bins_y, bounds, counts: vec![0; bins_x * bins_y], out_of_bounds: 0 })
    }

    fn axis_bin(v: f64, lo: f64, hi: f64, n: usize) -> Option<usize> {
        if !(v >= lo && v <= hi) {
            return None;
        }
        let i = ((v - lo) / (hi - lo) * n as f64).floor() as usize;
        Some(i.min(n - 1))
    }

    /// Bin index `(ix, iy)` of a point, `None` if out of bounds.
    pub fn locate(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let b = &self.bounds;
        Some((
            Self::axis_bin(x, b.xmin, b.xmax, self.bins_x)?,
            Self::axis_bin(y, b.ymin, b.ymax, self.bins_y)?,
        ))
    }

    pub fn add(&mut self, x: f64, y: f64) {
        match self.locate(x, y) {
            Some((ix, iy)) => self.counts[iy * self.bins_x + ix] += 1,
            None => self.out_of_bounds += 1,
        }
    }

    pub fn count(&self, ix: usize, iy: usize) -> u64 {
        self.counts[iy * self.bins_x + ix]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn in_bounds_total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.in_bounds_total() + self.out_of_bounds
    }

    /// Centre of bin `(ix, iy)`.
    pub fn bin_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        let b = &self.bounds;
        let dx = (b.xmax - b.xmin) / self.bins_x as f64;
        let dy = (b.ymax - b.ymin) / self.bins_y as f64;
        (b.xmin + (ix as f64 + 0.5) * dx, b.ymin + (iy as f64 + 0.5) * dy)
    }

    /// Adds another raster with identical geometry.
    pub fn merge(&mut self, other: &Self) {
        assert!(
            self.bins_x == other.bins_x && self.bins_y == other.bins_y && self.bounds == other.bounds,
            "merging rasters with different geometry"
        );
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.out_of_bounds += other.out_of_bounds;
    }
}

pub fn bin(cloud: &PointCloud2D, bins_x: usize, bins_y: usize, bounds: Bounds) -> Result<DensityRaster, RenderError> {
    let mut r = DensityRaster::empty(bins_x, bins_y, bounds)?;
    for &(x, y) in cloud.points() {
        r.add(x, y);
    }
    Ok(r)
}

/// [`bin`] via per-chunk partial rasters merged in a fixed order.
pub fn bin_par(cloud: &PointCloud2D, bins_x: usize, bins_y: usize, bounds: Bounds) -> Result<DensityRaster, RenderError> {
    let empty = DensityRaster::empty(bins_x, bins_y, bounds)?;
    Ok(cloud
        .points()
        .par_chunks(1 << 16)
        .map(|chunk| {
            let mut r = empty.clone();
            for &(x, y) in chunk {
                r.add(x, y);
            }
            r
        })
        .reduce(
            || empty.clone(),
            |mut a, b| {
                a.merge(&b);
                a
            },
        ))
}

/// Ordered `key=value` metadata written next to an output file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sidecar {
    entries: Vec<(String, String)>,
}

impl Sidecar {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, replacing an earlier value.
    pub fn set(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        let key = key.into();
        let value = value.to_string().replace('\n', " ");
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key, value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// `<output>.meta.txt`
    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".meta.txt");
        PathBuf::from(s)
    }

    pub fn write_for(&self, output: &Path) -> Result<(), RenderError> {
        let path = Self::path_for(output);
        let mut out = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
        for (k, v) in &self.entries {
            writeln!(out, "{k}={v}").map_err(io_err(&path))?;
        }
        out.flush().map_err(io_err(&path))
    }

    pub fn read(path: &Path) -> Result<Self, RenderError> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let mut s = Self::new();
        for line in text.lines().filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once('=').unwrap_or((line, ""));
            s.set(k, v);
        }
        Ok(s)
    }
}

/// 16-bit grayscale pixel rows, top row first.
pub fn raster_pixels(raster: &DensityRaster, scale: Scale) -> Vec<u16> {
    let max = raster.counts.iter().copied().max().unwrap_or(0);
    let denom = scale.apply(max);
    let mut px = Vec::with_capacity(raster.counts.len());
    for row in 0..raster.bins_y {
        let iy = raster.bins_y - 1 - row;
        for ix in 0..raster.bins_x {
            let c = raster.count(ix, iy);
            let v = if denom > 0.0 { (scale.apply(c) / denom * 65535.0).round() as u16 } else { 0 };
            px.push(v);
        }
    }
    px
}

/// Writes the raster as a PNG plus its sidecar. `meta` supplies run-level
/// keys (seed, command line, ...); geometry and totals are added here.
pub fn write_png(raster: &DensityRaster, path: &Path, scale: Scale, meta: &Sidecar) -> Result<(), RenderError> {
    let px = raster_pixels(raster, scale);
    let mut bytes = Vec::with_capacity(px.len() * 2);
    for v in px {
        bytes.extend_from_slice(&v.to_be_bytes());
    }
    let file = File::create(path).map_err(io_err(path))?;
    let png_err = |e: png::EncodingError| RenderError::Png { path: path.display().to_string(), msg: e.to_string() };
    let mut enc = png::Encoder::new(BufWriter::new(file), raster.bins_x as u32, raster.bins_y as u32);
    enc.set_color(png::ColorType::Grayscale);
    enc.set_depth(png::BitDepth::Sixteen);
    let mut writer = enc.write_header().map_err(png_err)?;
    writer.write_image_data(&bytes).map_err(png_err)?;
    writer.finish().map_err(png_err)?;

    let mut side = meta.clone();
    side.set("format", "png16-gray")
        .set("bounds", raster.bounds)
        .set("bins", format!("{}x{}", raster.bins_x, raster.bins_y))
        .set("scale", scale)
        .set("total_points", raster.total())
        .set("out_of_bounds", raster.out_of_bounds);
    side.write_for(path)
}

/// Writes the cloud as CSV plus its sidecar.
pub fn write_csv(cloud: &PointCloud2D, path: &Path, meta: &Sidecar) -> Result<(), RenderError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    write_csv_to(cloud, &mut out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))?;
    let mut side = meta.clone();
    side.set("format", "csv").set("label", &cloud.label).set("total_points", cloud.len());
    side.write_for(path)
}

pub fn write_csv_to<W: Write>(cloud: &PointCloud2D, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "x,y")?;
    for (x, y) in cloud.points() {
        // `Display` for f64 is the shortest string that parses back exactly.
        writeln!(out, "{x},{y}")?;
    }
    Ok(())
}

/// CSV writer fed in chunks. Output goes to `<path>.partial` and is renamed
/// into place by [`CsvStream::finish`], so an aborted run leaves no file
/// under the requested name.
pub struct CsvStream {
    path: PathBuf,
    tmp: PathBuf,
    out: BufWriter<File>,
    count: u64,
}

impl CsvStream {
    pub fn create(path: &Path) -> Result<Self, RenderError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".partial");
        let tmp = PathBuf::from(tmp);
        let mut out = BufWriter::new(File::create(&tmp).map_err(io_err(&tmp))?);
        writeln!(out, "x,y").map_err(io_err(&tmp))?;
        Ok(Self { path: path.to_path_buf(), tmp, out, count: 0 })
    }

    pub fn push_all(&mut self, pts: &[(f64, f64)]) -> Result<(), RenderError> {
        for (x, y) in pts {
            writeln!(self.out, "{x},{y}").map_err(io_err(&self.tmp))?;
        }
        self.count += pts.len() as u64;
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Flushes, moves the file into place and writes the sidecar.
    pub fn finish(mut self, label: &str, meta: &Sidecar) -> Result<u64, RenderError> {
        self.out.flush().map_err(io_err(&self.tmp))?;
        drop(self.out);
        std::fs::rename(&self.tmp, &self.path).map_err(io_err(&self.path))?;
        let mut side = meta.clone();
        side.set("format", "csv").set("label", label).set("total_points", self.count);
        side.write_for(&self.path)?;
        Ok(self.count)
    }
}

pub fn read_csv(path: &Path) -> Result<PointCloud2D, RenderError> {
    let file = File::open(path).map_err(io_err(path))?;
    let name = path.display().to_string();
    let parse_err = |line: usize, msg: String| RenderError::Parse { path: name.clone(), line, msg };
    let mut cloud = PointCloud2D::new(path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if i == 0 {
            if line.trim() != "x,y" {
                return Err(parse_err(1, format!("expected header x,y, found {line:?}")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let (xs, ys) = line.split_once(',').ok_or_else(|| parse_err(i + 1, "missing comma".into()))?;
        let x = xs.parse::<f64>().map_err(|e| parse_err(i + 1, e.to_string()))?;
        let y = ys.parse::<f64>().map_err(|e| parse_err(i + 1, e.to_string()))?;
        cloud.push(x, y).map_err(|e| parse_err(i + 1, e.to_string()))?;
    }
    Ok(cloud)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> Bounds {
        Bounds::new(0.0, 3.0, 0.0, 3.0).unwrap()
    }

    #[test]
    fn csv_stream_matches_whole_cloud_writer() {
        let dir = std::env::temp_dir().join(format!("rootcloud-csvstream-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let pts = [(0.1, -2.0), (1e-300, 3.5), (-0.0, 7.25)];
        let mut cloud = PointCloud2D::new("c");
        cloud.extend_finite(pts);
        let a = dir.join("a.csv");
        let b = dir.join("b.csv");
        write_csv(&cloud, &a, &Sidecar::new()).unwrap();
        let mut st = CsvStream::create(&b).unwrap();
        st.push_all(&pts[..1]).unwrap();
        st.push_all(&pts[1..]).unwrap();
        assert_eq!(st.finish("c", &Sidecar::new()).unwrap(), 3);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!dir.join("b.csv.partial").exists());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn center_point_lands_in_center_bin() {
        let mut c = PointCloud2D::new("c");
        c.push(1.5, 1.5).unwrap();
        let r = bin(&c, 3, 3, unit()).unwrap();
        for iy in 0..3 {
            for ix in 0..3 {
                assert_eq!(r.count(ix, iy), u64::from(ix == 1 && iy == 1));
            }
        }
    }

    #[test]
    fn empty_and_coincident() {
        let r = bin(&PointCloud2D::new("e"), 4, 2, unit()).unwrap();
        assert!(r.counts().iter().all(|&c| c == 0));
        let mut c = PointCloud2D::new("d");
        c.push(0.2, 2.9).unwrap();
        c.push(0.2, 2.9).unwrap();
        let r = bin(&c, 3, 3, unit()).unwrap();
        assert_eq!(r.count(0, 2), 2);
    }

    #[test]
    fn edges_and_out_of_bounds() {
        let mut c = PointCloud2D::new("e");
        for p in [(0.0, 0.0), (1.0, 0.0), (3.0, 3.0), (3.0000001, 1.0), (-0.1, 1.0)] {
            c.push(p.0, p.1).unwrap();
        }
        let r = bin(&c, 3, 3, unit()).unwrap();
        assert_eq!(r.count(0, 0), 1);
        assert_eq!(r.count(1, 0), 1, "[1,2) takes its lower edge");
        assert_eq!(r.count(2, 2), 1, "last bin is closed");
        assert_eq!(r.out_of_bounds, 2);
    }

    #[test]
    fn bad_geometry() {
        assert!(matches!(Bounds::new(1.0, 1.0, 0.0, 1.0), Err(RenderError::DegenerateBounds { .. })));
        assert!(matches!(DensityRaster::empty(0, 3, unit()), Err(RenderError::ZeroBins)));
        assert!(PointCloud2D::new("x").push(f64::NAN, 0.0).is_err());
        assert_eq!("-2,2,-1,1".parse::<Bounds>().unwrap(), Bounds::new(-2.0, 2.0, -1.0, 1.0).unwrap());
        assert!("1,2,3".parse::<Bounds>().is_err());
    }

    #[test]
    fn pixels_orientation_and_normalization() {
        let mut r = DensityRaster::empty(2, 2, unit()).unwrap();
        assert!(raster_pixels(&r, Scale::Log1p).iter().all(|&p| p == 0));
        r.add(0.1, 2.9); // top-left
        let px = raster_pixels(&r, Scale::Linear);
        assert_eq!(px, vec![65535, 0, 0, 0]);
    }

    #[test]
    fn csv_format() {
        let mut c = PointCloud2D::new("one");
        let mut buf = Vec::new();
        write_csv_to(&c, &mut buf).unwrap();
        assert_eq!(buf, b"x,y\n");
        c.push(0.5, -0.25).unwrap();
        buf.clear();
        write_csv_to(&c, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y\n0.5,-0.25\n");
    }

    #[test]
    fn sidecar_path_and_roundtrip() {
        let dir = std::env::temp_dir().join(format!("rootcloud-sidecar-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("cloud.csv");
        assert_eq!(Sidecar::path_for(&out), dir.join("cloud.csv.meta.txt"));
        let mut s = Sidecar::new();
        s.set("seed", 7).set("command", "rootcloud ensemble --seed 7").set("seed", 8);
        s.write_for(&out).unwrap();
        let back = Sidecar::read(&Sidecar::path_for(&out)).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.get("seed"), Some("8"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    proptest! {
        #[test]
        fn binning_conserves_points(pts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 0..300), nx in 1usize..20, ny in 1usize..20) {
            let mut c = PointCloud2D::new("p");
            for (x, y) in &pts {
                c.push(*x, *y).unwrap();
            }
            let b = Bounds::new(-2.0, 3.0, -1.0, 4.0).unwrap();
            let r = bin(&c, nx, ny, b).unwrap();
            prop_assert_eq!(r.total(), pts.len() as u64);
            prop_assert_eq!(bin_par(&c, nx, ny, b).unwrap(), r);
        }

        #[test]
        fn csv_round_trip_is_bit_exact(pts in proptest::collection::vec((any::<f64>(), any::<f64>()), 0..50)) {
            let mut c = PointCloud2D::new("rt");
            c.extend_finite(pts);
            let mut buf = Vec::new();
            write_csv_to(&c, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let back: Vec<(f64, f64)> = text.lines().skip(1).map(|l| {
                let (x, y) = l.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            }).collect();
            prop_assert_eq!(back.len(), c.len());
            for (a, b) in back.iter().zip(c.points()) {
                prop_assert_eq!(a.0.to_bits(), b.0.to_bits());
                prop_assert_eq!(a.1.to_bits(), b.1.to_bits());
            }
        }
    }
}
