//! Fixed inputs shared by the benchmarks.

use rootcloud_core::ensembles::sample;
use rootcloud_core::toric::{catalog, newton_polynomial, BivariatePolynomial, CoefficientSampler};
use rootcloud_core::{EnsembleSpec, Family, IntPolynomial};

/// `n` free integer polynomials of degree `deg`, coefficients in `[0, 1000]`.
pub fn free_polynomials(deg: usize, n: u64) -> Vec<IntPolynomial> {
    let spec = EnsembleSpec::new(Family::Free, deg, n, 0, 1000, 1);
    (0..n).map(|i| sample(&spec, i).expect("valid spec")).collect()
}

/// `n` Newton polynomials of a catalog diagram, coefficients in `[-10, 10]`.
pub fn newton_polynomials(diagram: &str, n: u64) -> Vec<BivariatePolynomial> {
    let d = catalog(diagram).expect("catalog entry");
    let s = CoefficientSampler { count: n, coeff_min: -10, coeff_max: 10, seed: 1 };
    (0..n)
        .map(|i| newton_polynomial(&d, &s.coefficients(d.len(), i)).expect("lengths match"))
        .collect()
}
