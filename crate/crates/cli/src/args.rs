use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootcloud_core::{Bounds, Family, Predicate, Scale};

#[derive(Parser, Debug)]
#[command(name = "rootcloud", version, about = "Root clouds of random and Calabi-Yau Poincare polynomials")]
pub struct Cli {
    /// Suppress progress output on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots of a seeded random polynomial ensemble.
    Ensemble(EnsembleArgs),
    /// Roots of threefold Poincare polynomials from a Hodge-number file.
    Cy3(CyArgs),
    /// Roots of fourfold Poincare polynomials from a Hodge-number file.
    Cy4(CyArgs),
    /// Critical points or slice roots of Newton polynomials of a toric diagram.
    Toric(ToricArgs),
    /// Mahler measure of an integer polynomial.
    Mahler(MahlerArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the point cloud as CSV (x,y per line).
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Write a 16-bit grayscale density PNG.
    #[arg(long, value_name = "PATH")]
    pub png: Option<PathBuf>,
    /// Raster size, `N` or `WxH`.
    #[arg(long, default_value = "1024", value_parser = parse_bins)]
    pub bins: (usize, usize),
    /// Raster window `xmin,xmax,ymin,ymax`; each command has its own default.
    #[arg(long, allow_hyphen_values = true)]
    pub bounds: Option<Bounds>,
    #[arg(long, default_value = "log1p")]
    pub scale: Scale,
    /// Worker threads; outputs do not depend on this.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub workers: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct EnsembleArgs {
    #[arg(long, default_value = "free")]
    pub family: Family,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub count: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub min: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub max: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Palindromic families only: force the linear coefficient to zero.
    #[arg(long)]
    pub no_linear: bool,
    /// Fix the constant coefficient to 1.
    #[arg(long)]
    pub fix_constant_one: bool,
    /// Do not redraw a zero leading coefficient.
    #[arg(long)]
    pub allow_zero_leading: bool,
    /// Map roots through z / (z + 1) before output.
    #[arg(long)]
    pub strip: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CyArgs {
    /// Hodge-number file: one record per line, comma or whitespace separated.
    #[arg(long)]
    pub input: PathBuf,
    /// self-mirror (cy3), chi-zero or h11-eq-h31 (cy4).
    #[arg(long)]
    pub filter: Option<Predicate>,
    /// Keep repeated records instead of using distinct ones.
    #[arg(long)]
    pub keep_duplicates: bool,
    /// Write the Hodge-number scatter as CSV.
    #[arg(long, value_name = "PATH")]
    pub hodge_csv: Option<PathBuf>,
    #[arg(long)]
    pub strip: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricMode {
    /// Real critical points `(z, w)` in R^2.
    Critical,
    /// Complex roots in `w` of `P(z0, w)`.
    Slice,
}

#[derive(Args, Debug, Clone)]
pub struct ToricArgs {
    #[arg(long)]
    pub diagram: String,
    /// Catalog file replacing the built-in one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "critical")]
    pub mode: ToricMode,
    /// Slice position, an integer or `p/q`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub z0: String,
    #[arg(long)]
    pub count: u64,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    pub min: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    pub max: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct MahlerArgs {
    /// Coefficients in ascending order, e.g. `1,1,0,-1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "file", required_unless_present = "file")]
    pub coeffs: Option<String>,
    /// File of ascending coefficients (commas or whitespace, `#` comments).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Also print the trapezoid-rule value with this many nodes.
    #[arg(long, num_args = 0..=1, default_missing_value = "65536")]
    pub quadrature: Option<usize>,
}

fn parse_bins(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| -> Result<usize, String> {
        match t.trim().parse::<usize>() {
            Ok(0) => Err("bins must be positive".into()),
            Ok(v) => Ok(v),
            Err(e) => Err(format!("{t:?}: {e}")),
        }
    };
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok((parse(w)?, parse(h)?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}
