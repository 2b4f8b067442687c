//! Real critical points of Newton polynomials.
//!
//! The partial derivatives are cleared of negative exponents, `w` is
//! eliminated exactly with a Sylvester resultant, and every real root of the
//! eliminant is back-substituted, Newton-polished against the original
//! (possibly Laurent) polynomial and verified on both partials.

use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;

use super::bivariate::{newton_polynomial, BivariatePolynomial};
use super::resultant::{polynomial_gcd, sylvester_resultant};
use super::{Degeneracy, ToricDiagram, ToricError};
use crate::ensembles::CounterRng;
use crate::polyroot::{horner, roots_f64, IntPolynomial, SolverConfig};
use crate::render::PointCloud2D;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalConfig {
    /// Both partials must satisfy `|dP| < verify_tol * (1 + sum |a_i|)`.
    pub verify_tol: f64,
    /// Points closer than this (per coordinate, relative above magnitude 1) are merged.
    pub dedup_tol: f64,
    /// Eliminant and slice roots with `|Im| > imag_tol * (1 + |r|)` are treated as complex.
    pub imag_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for CriticalConfig {
    fn default() -> Self {
        Self { verify_tol: 1e-7, dedup_tol: 1e-7, imag_tol: 1e-4, newton_max_iter: 60 }
    }
}

/// Real solutions of `dP/dz = dP/dw = 0`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CriticalPointSet {
    /// `(z, w)` pairs, sorted.
    pub points: Vec<(f64, f64)>,
    /// Roots of the eliminant dropped for being off the real axis.
    pub discarded_complex: usize,
    /// Real candidates that failed to polish onto a verified critical point.
    pub rejected_unverified: usize,
}

/// Evaluator for a Laurent polynomial and its derivatives in binary64.
#[derive(Clone, Debug)]
pub struct GradientField {
    terms: Vec<(i32, i32, f64)>,
}

impl GradientField {
    pub fn new(p: &BivariatePolynomial) -> Self {
        Self { terms: p.to_f64_terms() }
    }

    /// `(dP/dz, dP/dw)`
    pub fn gradient(&self, z: f64, w: f64) -> (f64, f64) {
        let (mut gz, mut gw) = (0.0, 0.0);
        for &(x, y, a) in &self.terms {
            if x != 0 {
                gz += a * x as f64 * z.powi(x - 1) * w.powi(y);
            }
            if y != 0 {
                gw += a * y as f64 * z.powi(x) * w.powi(y - 1);
            }
        }
        (gz, gw)
    }

    /// Sums of absolute term values of each partial, the scale rounding error lives on.
    fn gradient_scale(&self, z: f64, w: f64) -> (f64, f64) {
        let (mut sz, mut sw) = (0.0, 0.0);
        for &(x, y, a) in &self.terms {
            if x != 0 {
                sz += (a * x as f64 * z.powi(x - 1) * w.powi(y)).abs();
            }
            if y != 0 {
                sw += (a * y as f64 * z.powi(x) * w.powi(y - 1)).abs();
            }
        }
        (sz, sw)
    }

    /// `(P_zz, P_zw, P_ww)`
    pub fn hessian(&self, z: f64, w: f64) -> (f64, f64, f64) {
        let (mut hzz, mut hzw, mut hww) = (0.0, 0.0, 0.0);
        for &(x, y, a) in &self.terms {
            let (xf, yf) = (x as f64, y as f64);
            if x != 0 && x != 1 {
                hzz += a * xf * (xf - 1.0) * z.powi(x - 2) * w.powi(y);
            }
            if x != 0 && y != 0 {
                hzw += a * xf * yf * z.powi(x - 1) * w.powi(y - 1);
            }
            if y != 0 && y != 1 {
                hww += a * yf * (yf - 1.0) * z.powi(x) * w.powi(y - 2);
            }
        }
        (hzz, hzw, hww)
    }

    /// Newton iteration on the gradient; returns the point with the smallest
    /// gradient norm seen.
    pub fn newton(&self, mut z: f64, mut w: f64, max_iter: usize) -> (f64, f64) {
        let norm = |g: (f64, f64)| g.0.hypot(g.1);
        let mut best = (z, w, norm(self.gradient(z, w)));
        for _ in 0..max_iter {
            let (gz, gw) = self.gradient(z, w);
            let (hzz, hzw, hww) = self.hessian(z, w);
            let det = hzz * hww - hzw * hzw;
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let dz = (hww * gz - hzw * gw) / det;
            let dw = (hzz * gw - hzw * gz) / det;
            z -= dz;
            w -= dw;
            if !(z.is_finite() && w.is_finite()) {
                break;
            }
            let r = norm(self.gradient(z, w));
            if r < best.2 {
                best = (z, w, r);
            }
            if dz.abs() <= 1e-15 * (1.0 + z.abs()) && dw.abs() <= 1e-15 * (1.0 + w.abs()) {
                break;
            }
        }
        (best.0, best.1)
    }
}

/// Multiplies a partial by the monomial making its exponents non-negative.
/// On an axis excluded from the domain the smallest exponent is brought to 0
/// exactly, so no spurious power of that variable remains.
fn clear_denominators(q: &BivariatePolynomial, z_excluded: bool, w_excluded: bool) -> BivariatePolynomial {
    let mx = q.nonzero_terms().map(|t| t.x).min().unwrap_or(0);
    let my = q.nonzero_terms().map(|t| t.y).min().unwrap_or(0);
    let sx = if z_excluded { -mx } else { (-mx).max(0) };
    let sy = if w_excluded { -my } else { (-my).max(0) };
    q.shifted(sx, sy)
}

fn eval_rows(rows: &[IntPolynomial], z: f64) -> (Vec<f64>, f64) {
    let mut scale = 0.0;
    let vals = rows
        .iter()
        .map(|r| {
            let c = r.to_f64();
            scale += c.iter().enumerate().map(|(i, a)| a.abs() * z.abs().max(1.0).powi(i as i32)).sum::<f64>();
            horner(&c, Complex64::new(z, 0.0)).re
        })
        .collect();
    (vals, scale)
}

/// Real roots of a binary64 polynomial after trimming numerically-zero
/// leading coefficients. `None` if the polynomial is a nonzero constant.
fn real_roots_of_slice(c: &[f64], scale: f64, imag_tol: f64) -> Option<Vec<f64>> {
    let thresh = 1e-12 * scale;
    let deg = c.iter().rposition(|v| v.abs() > thresh)?;
    if deg == 0 {
        return None;
    }
    let rs = roots_f64(&c[..=deg], &SolverConfig::default()).ok()?;
    Some(
        rs.into_iter()
            .filter(|r| r.im.abs() <= imag_tol * (1.0 + r.norm()))
            .map(|r| r.re)
            .collect(),
    )
}

/// Candidate `(z, w)` pairs from eliminating `w` between `f` and `g`.
fn eliminate_w(
    f: &BivariatePolynomial,
    g: &BivariatePolynomial,
    cfg: &CriticalConfig,
) -> Result<(Vec<(f64, f64)>, usize), ToricError> {
    let fw = f.by_w_power();
    let gw = g.by_w_power();
    // A common factor depending on z alone is a union of lines z = const.
    let line_factor = polynomial_gcd(fw.iter().chain(&gw));
    if line_factor.effective_degree().is_some_and(|d| d > 0) {
        return Err(ToricError::DegenerateSystem(Degeneracy::CommonComponent));
    }
    let res = sylvester_resultant(&fw, &gw);
    let Some(deg) = res.effective_degree() else {
        return Err(ToricError::DegenerateSystem(Degeneracy::CommonComponent));
    };
    if deg == 0 {
        return Ok((Vec::new(), 0));
    }
    let coeffs = res.to_f64()[..=deg].to_vec();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(ToricError::Numeric(crate::polyroot::RootError::CoefficientOverflow));
    }
    let z_roots = roots_f64(&coeffs, &SolverConfig::default()).map_err(ToricError::Numeric)?;

    let mut discarded = 0;
    let mut candidates = Vec::new();
    let mut real_z: Vec<f64> = Vec::new();
    for zc in z_roots {
        if zc.im.abs() > cfg.imag_tol * (1.0 + zc.norm()) {
            discarded += 1;
            continue;
        }
        // Multiple eliminant roots are back-substituted once.
        if real_z.iter().any(|&z| (z - zc.re).abs() <= 1e-12 * (1.0 + z.abs())) {
            continue;
        }
        real_z.push(zc.re);
    }
    for z0 in real_z {
        for rows in [&fw, &gw] {
            let (vals, scale) = eval_rows(rows, z0);
            // A slice that is numerically constant (or zero) at an approximate
            // multiple root contributes no candidates; the other one does.
            if let Some(ws) = real_roots_of_slice(&vals, scale, cfg.imag_tol) {
                candidates.extend(ws.into_iter().map(|w| (z0, w)));
            }
        }
    }
    Ok((candidates, discarded))
}

pub fn real_critical_points(p: &BivariatePolynomial) -> Result<CriticalPointSet, ToricError> {
    real_critical_points_with(p, &CriticalConfig::default())
}

pub fn real_critical_points_with(p: &BivariatePolynomial, cfg: &CriticalConfig) -> Result<CriticalPointSet, ToricError> {
    if p.is_zero() {
        return Err(ToricError::ZeroPolynomial);
    }
    let pz = p.partial_z();
    let pw = p.partial_w();
    if pz.is_zero() || pw.is_zero() {
        return Err(ToricError::DegenerateSystem(Degeneracy::PartialIdenticallyZero));
    }
    if pz.is_constant() || pw.is_constant() {
        return Err(ToricError::DegenerateSystem(Degeneracy::ConstantPartial));
    }
    let (z_excl, w_excl) = p.is_laurent();
    let f = clear_denominators(&pz, z_excl, w_excl);
    let g = clear_denominators(&pw, z_excl, w_excl);

    let w_free = |q: &BivariatePolynomial| q.nonzero_terms().all(|t| t.y == 0);
    let (candidates, discarded_complex) = if w_free(&f) && w_free(&g) {
        let (c, d) = eliminate_w(&f.transposed(), &g.transposed(), cfg)?;
        (c.into_iter().map(|(w, z)| (z, w)).collect(), d)
    } else {
        eliminate_w(&f, &g, cfg)?
    };

    let field = GradientField::new(p);
    let spec_tol = cfg.verify_tol * (1.0 + p.coeff_l1());
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut rejected = 0;
    for (z0, w0) in candidates {
        if (z_excl && z0 == 0.0) || (w_excl && w0 == 0.0) {
            continue;
        }
        let (z, w) = field.newton(z0, w0, cfg.newton_max_iter);
        if (z_excl && z.abs() <= 1e-9) || (w_excl && w.abs() <= 1e-9) {
            continue;
        }
        let (gz, gw) = field.gradient(z, w);
        let (sz, sw) = field.gradient_scale(z, w);
        let converged = gz.abs() <= 1e-9 * (1.0 + sz) && gw.abs() <= 1e-9 * (1.0 + sw);
        if !(converged && gz.abs() < spec_tol && gw.abs() < spec_tol) {
            rejected += 1;
            continue;
        }
        let close = |a: f64, b: f64| (a - b).abs() <= cfg.dedup_tol * a.abs().max(b.abs()).max(1.0);
        if !points.iter().any(|&(pz, pw)| close(pz, z) && close(pw, w)) {
            points.push((z, w));
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(CriticalPointSet { points, discarded_complex, rejected_unverified: rejected })
}

/// Seeded integer coefficient draws for a diagram, one vector per index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientSampler {
    pub count: u64,
    pub coeff_min: i64,
    pub coeff_max: i64,
    pub seed: u64,
}

impl CoefficientSampler {
    pub fn validate(&self) -> Result<(), ToricError> {
        if self.coeff_min > self.coeff_max {
            return Err(ToricError::EmptyRange { min: self.coeff_min, max: self.coeff_max });
        }
        Ok(())
    }

    /// Coefficients of draw `index` for a diagram with `n_points` points.
    pub fn coefficients(&self, n_points: usize, index: u64) -> Vec<BigInt> {
        (0..n_points)
            .map(|pos| BigInt::from(CounterRng::new(self.seed, index, pos as u64).in_range(self.coeff_min, self.coeff_max)))
            .collect()
    }
}

/// Result of a single draw inside a sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum DrawOutcome {
    Points(CriticalPointSet),
    Degenerate(Degeneracy),
    ZeroPolynomial,
    Failed(String),
}

pub fn solve_draw(d: &ToricDiagram, sampler: &CoefficientSampler, index: u64, cfg: &CriticalConfig) -> DrawOutcome {
    let coeffs = sampler.coefficients(d.len(), index);
    let p = match newton_polynomial(d, &coeffs) {
        Ok(p) => p,
        Err(e) => return DrawOutcome::Failed(e.to_string()),
    };
    match real_critical_points_with(&p, cfg) {
        Ok(set) => DrawOutcome::Points(set),
        Err(ToricError::DegenerateSystem(kind)) => DrawOutcome::Degenerate(kind),
        Err(ToricError::ZeroPolynomial) => DrawOutcome::ZeroPolynomial,
        Err(e) => DrawOutcome::Failed(e.to_string()),
    }
}

/// Aggregate of a critical-point sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOutcome {
    /// All `(z, w)` points in draw-index order.
    pub cloud: PointCloud2D,
    pub draws: u64,
    pub degenerate: u64,
    pub zero_polynomial: u64,
    pub failed: u64,
    pub discarded_complex: u64,
    pub rejected_unverified: u64,
}

/// Union of the real critical points over every draw of `sampler`.
///
/// Runs on the current rayon pool; output order follows the draw index, so
/// it does not depend on the number of workers.
pub fn critical_point_sweep(d: &ToricDiagram, sampler: &CoefficientSampler) -> Result<SweepOutcome, ToricError> {
    critical_point_sweep_with(d, sampler, &CriticalConfig::default())
}

pub fn critical_point_sweep_with(
    d: &ToricDiagram,
    sampler: &CoefficientSampler,
    cfg: &CriticalConfig,
) -> Result<SweepOutcome, ToricError> {
    sampler.validate()?;
    let outcomes: Vec<DrawOutcome> = (0..sampler.count)
        .into_par_iter()
        .map(|i| solve_draw(d, sampler, i, cfg))
        .collect();
    let mut out = SweepOutcome { cloud: PointCloud2D::new(format!("critical points {}", d.name)), ..Default::default() };
    out.draws = sampler.count;
    for o in outcomes {
        match o {
            DrawOutcome::Points(set) => {
                out.discarded_complex += set.discarded_complex as u64;
                out.rejected_unverified += set.rejected_unverified as u64;
                out.cloud.extend_finite(set.points);
            }
            DrawOutcome::Degenerate(_) => out.degenerate += 1,
            DrawOutcome::ZeroPolynomial => out.zero_polynomial += 1,
            DrawOutcome::Failed(_) => out.failed += 1,
        }
    }
    Ok(out)
}
