//! Exact integer polynomials and their numeric roots.
//!
//! Roots come from the eigenvalues of the balanced companion matrix (Francis
//! double-shift QR), followed by a few guarded Newton steps against the
//! original coefficients. Root sets are reported with per-root scaled
//! residuals
//!
//! ```text
//! |P(r)| / (sum_i |c_i| * max(1, |r|)^deg)
//! ```
//!
//! so callers can check the solve without re-evaluating.

mod eigen;
mod mahler;
mod poly;

pub use mahler::{mahler_measure, mahler_measure_quadrature};
pub use poly::IntPolynomial;
pub(crate) use poly::{horner, horner_with_derivative};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("constant nonzero polynomial has no roots")]
    DegreeZero,
    #[error("coefficient is not representable as a finite binary64")]
    CoefficientOverflow,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("root {root} has scaled residual {residual:e} above tolerance {tol:e}")]
    ResidualTooLarge { root: Complex64, residual: f64, tol: f64 },
}

/// Tolerances for the root solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Bound on the scaled residual of every returned root.
    pub residual_tol: f64,
    /// Newton steps applied to every eigenvalue.
    pub polish_steps: usize,
    /// Extra Newton steps allowed for roots still above `residual_tol`.
    pub rescue_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { residual_tol: 1e-9, polish_steps: 3, rescue_steps: 20 }
    }
}

/// Default `|Im|` threshold for [`count_real_roots`].
pub const DEFAULT_IM_TOL: f64 = 1e-9;
/// Default distance within which a root and its conjugate are considered paired.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-8;

/// Roots of one polynomial, with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Scaled residual of each root, same order as `roots`.
    pub residuals: Vec<f64>,
    /// Effective degree of the solved polynomial.
    pub source_degree: usize,
    /// Number of zero leading coefficients removed before solving.
    pub trimmed: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Every root with `|Im| > pairing_tol` has a partner within `pairing_tol`
    /// of its conjugate.
    pub fn is_conjugate_closed(&self, pairing_tol: f64) -> bool {
        self.roots.iter().all(|r| {
            r.im.abs() <= pairing_tol
                || self.roots.iter().any(|s| (s - r.conj()).norm() < pairing_tol)
        })
    }
}

/// Scaled residual `|P(r)| / (sum |c_i| max(1,|r|)^deg)`.
pub fn scaled_residual(coeffs: &[f64], r: Complex64) -> f64 {
    let deg = coeffs.len().saturating_sub(1) as i32;
    let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>() * r.norm().max(1.0).powi(deg);
    if scale == 0.0 {
        return 0.0;
    }
    horner(coeffs, r).norm() / scale
}

pub fn roots(p: &IntPolynomial) -> Result<RootSet, RootError> {
    roots_with(p, &SolverConfig::default())
}

pub fn roots_with(p: &IntPolynomial, cfg: &SolverConfig) -> Result<RootSet, RootError> {
    let deg = p.effective_degree().ok_or(RootError::IdenticallyZero)?;
    if deg == 0 {
        return Err(RootError::DegreeZero);
    }
    let trimmed = p.coeffs().len() - 1 - deg;
    let coeffs: Vec<f64> = p.to_f64()[..=deg].to_vec();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(RootError::CoefficientOverflow);
    }
    let roots = roots_f64(&coeffs, cfg)?;
    let residuals: Vec<f64> = roots.iter().map(|&r| scaled_residual(&coeffs, r)).collect();
    if let Some((i, &res)) = residuals
        .iter()
        .enumerate()
        .find(|(_, &res)| res.is_nan() || res > cfg.residual_tol)
    {
        return Err(RootError::ResidualTooLarge { root: roots[i], residual: res, tol: cfg.residual_tol });
    }
    Ok(RootSet { roots, residuals, source_degree: deg, trimmed })
}

/// Roots of a binary64 polynomial whose leading coefficient is nonzero.
///
/// No residual check is made here; the caller decides what to accept.
pub(crate) fn roots_f64(coeffs: &[f64], cfg: &SolverConfig) -> Result<Vec<Complex64>, RootError> {
    let deg = coeffs.len() - 1;
    debug_assert!(coeffs[deg] != 0.0);

    // Factor out t^k exactly.
    let zeros = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let reduced = &coeffs[zeros..];
    let m = reduced.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];

    match m {
        0 => {}
        1 => roots.push(Complex64::new(-reduced[0] / reduced[1], 0.0)),
        _ => {
            let lead = reduced[m];
            let tail: Vec<f64> = reduced[..m].iter().map(|c| c / lead).collect();
            let mut a = eigen::companion(&tail);
            eigen::balance(&mut a);
            let eig = eigen::hessenberg_eigenvalues(&mut a).ok_or(RootError::NoConvergence)?;
            roots.extend(eig.into_iter().map(|r| polish(reduced, r, cfg)));
        }
    }
    snap_near_real(coeffs, &mut roots, cfg.residual_tol);
    Ok(roots)
}

/// Guarded Newton: a step is taken only if it does not increase `|P|`.
fn polish(coeffs: &[f64], mut z: Complex64, cfg: &SolverConfig) -> Complex64 {
    let mut pz = horner(coeffs, z).norm();
    let mut steps = 0;
    let budget = cfg.polish_steps + cfg.rescue_steps;
    while steps < budget {
        if steps >= cfg.polish_steps && scaled_residual(coeffs, z) <= cfg.residual_tol * 1e-2 {
            break;
        }
        steps += 1;
        let (p, dp) = horner_with_derivative(coeffs, z);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        let pn = horner(coeffs, next).norm();
        if pn > pz {
            break;
        }
        z = next;
        pz = pn;
    }
    z
}

/// Roots of a real polynomial with a tiny imaginary part are moved onto the
/// real axis when the real point is an equally good root.
///
/// Multiple real roots split into conjugate pairs of size ~sqrt(eps) under the
/// eigenvalue solve; this restores them without touching genuine complex pairs.
fn snap_near_real(coeffs: &[f64], roots: &mut [Complex64], residual_tol: f64) {
    for r in roots.iter_mut() {
        if r.im != 0.0 && r.im.abs() <= 1e-6 * (1.0 + r.norm()) {
            let real = Complex64::new(r.re, 0.0);
            if scaled_residual(coeffs, real) <= residual_tol * 1e-2 {
                *r = real;
            }
        }
    }
}

/// Number of roots with `|Im r| < im_tol * (1 + |Re r|)`.
pub fn count_real_roots(p: &IntPolynomial, im_tol: f64) -> Result<usize, RootError> {
    let rs = roots(p)?;
    Ok(rs.roots.iter().filter(|r| r.im.abs() < im_tol * (1.0 + r.re.abs())).count())
}
