use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::{horner, roots, IntPolynomial, RootError};

/// Mahler measure via Jensen's formula: `|lead| * prod max(1, |r_i|)`.
///
/// A nonzero constant `c` has measure `|c|`.
pub fn mahler_measure(p: &IntPolynomial) -> Result<f64, RootError> {
    let deg = p.effective_degree().ok_or(RootError::IdenticallyZero)?;
    let lead = p.coeffs()[deg].abs().to_f64().ok_or(RootError::CoefficientOverflow)?;
    if deg == 0 {
        return Ok(lead);
    }
    let rs = roots(p)?;
    // Accumulate in log space so large degrees cannot overflow.
    let log_sum: f64 = rs.roots.iter().map(|r| r.norm().max(1.0).ln()).sum();
    Ok(lead * log_sum.exp())
}

/// Mahler measure from its defining integral, by the trapezoid rule on
/// `nodes` equally spaced points of the unit circle.
///
/// Spectrally accurate when no root lies near the circle; converges slowly
/// otherwise. Kept as a cross-check for [`mahler_measure`].
pub fn mahler_measure_quadrature(p: &IntPolynomial, nodes: usize) -> Result<f64, RootError> {
    if p.is_zero() {
        return Err(RootError::IdenticallyZero);
    }
    let coeffs = p.to_f64();
    let step = std::f64::consts::TAU / nodes as f64;
    let mean_log: f64 = (0..nodes)
        .map(|k| {
            let z = Complex64::from_polar(1.0, step * k as f64);
            horner(&coeffs, z).norm().ln()
        })
        .sum::<f64>()
        / nodes as f64;
    Ok(mean_log.exp())
}
