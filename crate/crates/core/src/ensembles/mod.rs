//! Seeded generators for constrained random integer polynomials.
//!
//! Samples are addressed by index: [`sample`] with the same spec and index
//! returns the same coefficients regardless of which worker asks or when.

mod rng;

pub use rng::CounterRng;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polyroot::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnsembleError {
    #[error("empty coefficient range [{min}, {max}]")]
    EmptyRange { min: i64, max: i64 },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("index {index} out of range for ensemble of {count}")]
    IndexOutOfRange { index: u64, count: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every coefficient drawn independently from the range.
    Free,
    /// Every coefficient drawn from `{-1, 0, 1}`; the configured range is ignored.
    LittlewoodSet,
    /// `1 + b1 t + ... + b1 t^(d-1) + t^d` with the `b_i` drawn from the range.
    MonicPalindromic,
    /// As [`Family::MonicPalindromic`] with `b1 = 0`.
    MonicPalindromicNoLinear,
}

impl Family {
    pub fn is_palindromic(self) -> bool {
        matches!(self, Family::MonicPalindromic | Family::MonicPalindromicNoLinear)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Free => "free",
            Family::LittlewoodSet => "littlewood_set",
            Family::MonicPalindromic => "monic_palindromic",
            Family::MonicPalindromicNoLinear => "monic_palindromic_no_linear",
        })
    }
}

impl FromStr for Family {
    type Err = EnsembleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "free" => Ok(Family::Free),
            "littlewood" | "littlewood_set" => Ok(Family::LittlewoodSet),
            "palindromic" | "monic_palindromic" => Ok(Family::MonicPalindromic),
            "palindromic_no_linear" | "monic_palindromic_no_linear" => {
                Ok(Family::MonicPalindromicNoLinear)
            }
            other => Err(EnsembleError::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

/// Parameters of a random polynomial ensemble.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub degree: usize,
    pub count: u64,
    /// Inclusive coefficient bounds.
    pub coeff_min: i64,
    pub coeff_max: i64,
    pub family: Family,
    /// Redraw the leading coefficient from the nonzero values of the range.
    pub require_leading_nonzero: bool,
    /// Pin the constant term to 1 (free and Littlewood families only).
    pub fix_constant_one: bool,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(family: Family, degree: usize, count: u64, coeff_min: i64, coeff_max: i64, seed: u64) -> Self {
        Self {
            degree,
            count,
            coeff_min,
            coeff_max,
            family,
            require_leading_nonzero: true,
            fix_constant_one: false,
            seed,
        }
    }

    /// Effective inclusive range after the family's alphabet is applied.
    pub fn range(&self) -> (i64, i64) {
        match self.family {
            Family::LittlewoodSet => (-1, 1),
            _ => (self.coeff_min, self.coeff_max),
        }
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        let (lo, hi) = self.range();
        if lo > hi {
            return Err(EnsembleError::EmptyRange { min: lo, max: hi });
        }
        if self.degree == 0 {
            return Err(EnsembleError::InvalidFamily("degree must be at least 1".into()));
        }
        if self.family == Family::MonicPalindromicNoLinear && self.degree < 2 {
            return Err(EnsembleError::InvalidFamily(
                "a vanishing linear term needs degree at least 2".into(),
            ));
        }
        if self.fix_constant_one && self.family.is_palindromic() {
            return Err(EnsembleError::InvalidFamily(
                "palindromic families are already monic with constant term 1".into(),
            ));
        }
        if self.require_leading_nonzero && !self.family.is_palindromic() && lo == 0 && hi == 0 {
            return Err(EnsembleError::InvalidFamily(
                "range [0, 0] has no nonzero value for the leading coefficient".into(),
            ));
        }
        Ok(())
    }

    /// Iterator over the ensemble in index order.
    pub fn iter(&self) -> impl Iterator<Item = Result<IntPolynomial, EnsembleError>> + '_ {
        (0..self.count).map(move |i| sample(self, i))
    }
}

/// Uniform draw from the nonzero values of `lo..=hi`.
fn draw_nonzero(rng: &mut CounterRng, lo: i64, hi: i64) -> i64 {
    if lo > 0 || hi < 0 {
        return rng.in_range(lo, hi);
    }
    // Draw from the range with zero removed: shift the upper part down by one.
    let v = rng.in_range(lo, hi - 1);
    if v >= 0 {
        v + 1
    } else {
        v
    }
}

/// The `index`-th polynomial of the ensemble.
pub fn sample(spec: &EnsembleSpec, index: u64) -> Result<IntPolynomial, EnsembleError> {
    spec.validate()?;
    if index >= spec.count {
        return Err(EnsembleError::IndexOutOfRange { index, count: spec.count });
    }
    let (lo, hi) = spec.range();
    let deg = spec.degree;
    let draw = |pos: usize| CounterRng::new(spec.seed, index, pos as u64).in_range(lo, hi);

    let mut coeffs = vec![0i64; deg + 1];
    match spec.family {
        Family::Free | Family::LittlewoodSet => {
            for (pos, c) in coeffs.iter_mut().enumerate() {
                *c = draw(pos);
            }
            if spec.require_leading_nonzero && coeffs[deg] == 0 {
                // Separate stream so the redraw does not replay the first draw.
                let mut rng = CounterRng::new(spec.seed, index, (deg + 1) as u64);
                coeffs[deg] = draw_nonzero(&mut rng, lo, hi);
            }
            if spec.fix_constant_one {
                coeffs[0] = 1;
            }
        }
        Family::MonicPalindromic | Family::MonicPalindromicNoLinear => {
            coeffs[0] = 1;
            coeffs[deg] = 1;
            for pos in 1..=deg / 2 {
                let v = draw(pos);
                coeffs[pos] = v;
                coeffs[deg - pos] = v;
            }
            if spec.family == Family::MonicPalindromicNoLinear {
                coeffs[1] = 0;
                coeffs[deg - 1] = 0;
            }
        }
    }
    Ok(IntPolynomial::from_i64s(&coeffs))
}

/// `1 + b1 t + b2 t^2 + b3 t^3 + b2 t^4 + b1 t^5 + t^6`.
pub fn build_palindromic_sextic(b1: &BigInt, b2: &BigInt, b3: &BigInt) -> IntPolynomial {
    build_monic_palindromic(&[b1.clone(), b2.clone(), b3.clone()], 6)
}

/// `1 + b1 t + b2 t^2 + b3 t^3 + b4 t^4 + b3 t^5 + b2 t^6 + b1 t^7 + t^8`.
pub fn build_palindromic_octic(b1: &BigInt, b2: &BigInt, b3: &BigInt, b4: &BigInt) -> IntPolynomial {
    build_monic_palindromic(&[b1.clone(), b2.clone(), b3.clone(), b4.clone()], 8)
}

/// Monic palindromic polynomial of even `degree` from its free middle
/// coefficients `b_1 ..= b_{degree/2}`.
fn build_monic_palindromic(middle: &[BigInt], degree: usize) -> IntPolynomial {
    debug_assert_eq!(middle.len(), degree / 2);
    let mut coeffs = vec![BigInt::from(1); degree + 1];
    for (i, b) in middle.iter().enumerate() {
        coeffs[i + 1] = b.clone();
        coeffs[degree - 1 - i] = b.clone();
    }
    IntPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn as_i64(p: &IntPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sextic_builder() {
        let p = build_palindromic_sextic(&bi(0), &bi(1), &bi(4));
        assert_eq!(as_i64(&p), vec![1, 0, 1, 4, 1, 0, 1]);
        assert_eq!(as_i64(&build_palindromic_sextic(&bi(0), &bi(0), &bi(0))), vec![1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(as_i64(&build_palindromic_sextic(&bi(5), &bi(7), &bi(9))), vec![1, 5, 7, 9, 7, 5, 1]);
    }

    #[test]
    fn octic_builder() {
        assert_eq!(
            as_i64(&build_palindromic_octic(&bi(0), &bi(0), &bi(0), &bi(0))),
            vec![1, 0, 0, 0, 0, 0, 0, 0, 1]
        );
        assert_eq!(
            as_i64(&build_palindromic_octic(&bi(1), &bi(2), &bi(3), &bi(4))),
            vec![1, 1, 2, 3, 4, 3, 2, 1, 1]
        );
    }

    #[test]
    fn littlewood_alphabet() {
        let spec = EnsembleSpec::new(Family::LittlewoodSet, 4, 2000, 0, 1000, 3);
        for p in spec.iter() {
            let c = as_i64(&p.unwrap());
            assert_eq!(c.len(), 5);
            assert!(c.iter().all(|v| (-1..=1).contains(v)));
            assert_ne!(c[4], 0);
        }
    }

    #[test]
    fn empty_ensemble() {
        let spec = EnsembleSpec::new(Family::Free, 6, 0, 0, 1000, 1);
        assert_eq!(spec.iter().count(), 0);
        assert!(matches!(sample(&spec, 0), Err(EnsembleError::IndexOutOfRange { .. })));
    }

    #[test]
    fn validation_errors() {
        let spec = EnsembleSpec::new(Family::Free, 6, 10, 5, 4, 1);
        assert_eq!(spec.validate(), Err(EnsembleError::EmptyRange { min: 5, max: 4 }));
        let spec = EnsembleSpec::new(Family::MonicPalindromicNoLinear, 1, 10, 0, 4, 1);
        assert!(matches!(spec.validate(), Err(EnsembleError::InvalidFamily(_))));
        let spec = EnsembleSpec::new(Family::Free, 3, 10, 0, 0, 1);
        assert!(matches!(spec.validate(), Err(EnsembleError::InvalidFamily(_))));
        assert!("bogus".parse::<Family>().is_err());
        assert_eq!("palindromic-no-linear".parse::<Family>(), Ok(Family::MonicPalindromicNoLinear));
    }

    #[test]
    fn fixed_constant_term() {
        let mut spec = EnsembleSpec::new(Family::LittlewoodSet, 5, 200, 0, 0, 9);
        spec.fix_constant_one = true;
        assert!(spec.iter().all(|p| p.unwrap().coeffs()[0] == bi(1)));
    }

    #[test]
    fn nonzero_redraw_covers_negative_ranges() {
        let mut rng = CounterRng::new(0, 0, 0);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..2000 {
            let v = draw_nonzero(&mut rng, -2, 2);
            assert_ne!(v, 0);
            seen.insert(v);
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![-2, -1, 1, 2]);
    }

    #[test]
    fn littlewood_frequencies_are_uniform() {
        // 10^5 coefficient draws over the alphabet, each within 5 sigma of n/3.
        let spec = EnsembleSpec {
            require_leading_nonzero: false,
            ..EnsembleSpec::new(Family::LittlewoodSet, 9, 10_000, 0, 0, 42)
        };
        let mut counts = [0u64; 3];
        for p in spec.iter() {
            for c in as_i64(&p.unwrap()) {
                counts[(c + 1) as usize] += 1;
            }
        }
        let n = counts.iter().sum::<u64>() as f64;
        assert_eq!(n, 100_000.0);
        let sigma = (n * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in counts {
            assert!((c as f64 - n / 3.0).abs() < 5.0 * sigma, "{counts:?}");
        }
    }

    proptest! {
        #[test]
        fn samples_respect_constraints(
            seed in any::<u64>(),
            index in 0u64..1000,
            degree in 2usize..12,
            lo in -50i64..50,
            width in 0i64..100,
            fam in 0usize..4,
        ) {
            let family = [Family::Free, Family::LittlewoodSet, Family::MonicPalindromic, Family::MonicPalindromicNoLinear][fam];
            let hi = lo + width;
            let spec = EnsembleSpec::new(family, degree, 1000, lo, hi, seed);
            prop_assume!(spec.validate().is_ok());
            let p = sample(&spec, index).unwrap();
            let again = sample(&spec, index).unwrap();
            prop_assert_eq!(&p, &again);
            let c = as_i64(&p);
            prop_assert_eq!(c.len(), degree + 1);
            prop_assert_ne!(c[degree], 0);
            let (lo, hi) = spec.range();
            match family {
                Family::Free | Family::LittlewoodSet => {
                    prop_assert!(c.iter().all(|v| (lo..=hi).contains(v)));
                }
                _ => {
                    prop_assert!(p.is_palindromic());
                    prop_assert!(c[1..degree].iter().all(|v| (lo..=hi).contains(v) || *v == 0));
                    if family == Family::MonicPalindromicNoLinear {
                        prop_assert_eq!(c[1], 0);
                    }
                }
            }
        }
    }
}
