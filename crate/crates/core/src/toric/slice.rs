//! Root clouds of univariate slices `P(z0, w)` over sampled coefficients.

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use super::bivariate::{newton_polynomial, slice_at_z};
use super::critical::CoefficientSampler;
use super::{ToricDiagram, ToricError};
use crate::polyroot::roots;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SliceOutcome {
    /// Roots in `w`, in draw-index order.
    pub roots: Vec<Complex64>,
    pub draws: u64,
    /// Slices that vanish identically or are nonzero constants.
    pub degenerate: u64,
    /// Slices whose roots could not be certified.
    pub failed: u64,
}

enum Draw {
    Roots(Vec<Complex64>),
    Degenerate,
    Failed,
}

fn slice_draw(d: &ToricDiagram, sampler: &CoefficientSampler, z0: &BigRational, index: u64) -> Draw {
    let coeffs = sampler.coefficients(d.len(), index);
    let Ok(p) = newton_polynomial(d, &coeffs) else {
        return Draw::Failed;
    };
    match slice_at_z(&p, z0) {
        Ok(s) if s.effective_degree().unwrap_or(0) == 0 => Draw::Degenerate,
        Ok(s) => match roots(&s) {
            Ok(rs) => Draw::Roots(rs.roots),
            Err(_) => Draw::Failed,
        },
        Err(ToricError::IdenticallyZeroSlice) => Draw::Degenerate,
        Err(_) => Draw::Failed,
    }
}

/// Roots of `P(z0, w)` for every draw of `sampler`, on the current rayon pool.
pub fn slice_root_sweep(d: &ToricDiagram, sampler: &CoefficientSampler, z0: &BigRational) -> Result<SliceOutcome, ToricError> {
    sampler.validate()?;
    let (zl, _) = d.points.iter().fold((false, false), |acc, p| (acc.0 || p.0 < 0, acc.1 || p.1 < 0));
    if zl && z0 == &BigRational::from_integer(0.into()) {
        return Err(ToricError::SliceOutOfDomain);
    }
    let draws: Vec<Draw> = (0..sampler.count)
        .into_par_iter()
        .map(|i| slice_draw(d, sampler, z0, i))
        .collect();
    let mut out = SliceOutcome { draws: sampler.count, ..Default::default() };
    for dr in draws {
        match dr {
            Draw::Roots(r) => out.roots.extend(r),
            Draw::Degenerate => out.degenerate += 1,
            Draw::Failed => out.failed += 1,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::catalog;
    use num_bigint::BigInt;

    #[test]
    fn conifold_slice_roots() {
        let d = catalog("conifold").unwrap();
        let s = CoefficientSampler { count: 50, coeff_min: -4, coeff_max: 4, seed: 3 };
        let one = BigRational::from_integer(BigInt::from(1));
        let out = slice_root_sweep(&d, &s, &one).unwrap();
        // (a + b) + (c + d) w has one root unless c + d == 0.
        let mut expect = 0;
        for i in 0..50 {
            let c = s.coefficients(4, i);
            if &c[2] + &c[3] != BigInt::from(0) {
                expect += 1;
            }
        }
        assert_eq!(out.roots.len(), expect);
        assert_eq!(out.degenerate + out.roots.len() as u64, 50);
        for r in &out.roots {
            assert!(r.im == 0.0);
        }
    }

    #[test]
    fn laurent_slice_at_origin_is_rejected() {
        let s = CoefficientSampler { count: 5, coeff_min: -4, coeff_max: 4, seed: 3 };
        let zero = BigRational::from_integer(BigInt::from(0));
        assert_eq!(slice_root_sweep(&catalog("F0").unwrap(), &s, &zero), Err(ToricError::SliceOutOfDomain));
        assert!(slice_root_sweep(&catalog("SPP").unwrap(), &s, &zero).is_ok());
    }
}
