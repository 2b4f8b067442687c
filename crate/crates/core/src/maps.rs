//! Mobius maps between the unit disk picture and the critical strip.
//!
//! `to_strip` sends the unit circle onto the line `Re = 1/2` and the open
//! disk onto the half-plane `Re < 1/2`; `from_strip` sends that half-plane
//! back into the disk. The two are not mutually inverse:
//! `from_strip(to_strip(z)) == -z`. [`strip_inverse`] is the exact inverse of
//! [`to_strip`].

use num_complex::Complex64;
use thiserror::Error;

pub type ComplexPoint = Complex64;

/// Points closer than this to a pole are rejected.
pub const POLE_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MapError {
    #[error("z = {0} is at the pole z = -1 of z/(z+1)")]
    PoleAtMinusOne(Complex64),
    #[error("z = {0} is at the pole z = 1 of z/(z-1)")]
    PoleAtOne(Complex64),
    #[error("non-finite input {0}")]
    NonFinite(Complex64),
}

fn finite(z: Complex64) -> Result<Complex64, MapError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(MapError::NonFinite(z))
    }
}

/// `z / (z + 1)`.
pub fn to_strip(z: ComplexPoint) -> Result<ComplexPoint, MapError> {
    let denom = finite(z)? + 1.0;
    if denom.norm() < POLE_EPS {
        return Err(MapError::PoleAtMinusOne(z));
    }
    finite(z / denom)
}

/// `z / (z - 1)`: half-plane `Re < 1/2` onto the unit disk.
pub fn from_strip(z: ComplexPoint) -> Result<ComplexPoint, MapError> {
    let denom = finite(z)? - 1.0;
    if denom.norm() < POLE_EPS {
        return Err(MapError::PoleAtOne(z));
    }
    finite(z / denom)
}

/// `w / (1 - w)`, the two-sided inverse of [`to_strip`].
pub fn strip_inverse(w: ComplexPoint) -> Result<ComplexPoint, MapError> {
    let denom = 1.0 - finite(w)?;
    if denom.norm() < POLE_EPS {
        return Err(MapError::PoleAtOne(w));
    }
    finite(w / denom)
}

/// Applies `map` to every point, dropping (and counting) those it rejects.
pub fn map_batch<F>(points: &[ComplexPoint], map: F) -> (Vec<ComplexPoint>, usize)
where
    F: Fn(ComplexPoint) -> Result<ComplexPoint, MapError>,
{
    let mut out = Vec::with_capacity(points.len());
    let mut skipped = 0;
    for &z in points {
        match map(z) {
            Ok(w) => out.push(w),
            Err(_) => skipped += 1,
        }
    }
    (out, skipped)
}
