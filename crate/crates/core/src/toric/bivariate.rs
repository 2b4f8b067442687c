use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{ToricDiagram, ToricError};
use crate::polyroot::IntPolynomial;

/// One term `a z^x w^y`; exponents may be negative (Laurent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub x: i64,
    pub y: i64,
    pub coeff: BigInt,
}

/// Integer Laurent polynomial in `(z, w)` supported on distinct exponents.
///
/// Zero coefficients are kept as part of the record; evaluation and solvers
/// skip them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: Vec<Term>,
}

/// Pairs each lattice point of `d` with its coefficient.
pub fn newton_polynomial(d: &ToricDiagram, coeffs: &[BigInt]) -> Result<BivariatePolynomial, ToricError> {
    if coeffs.len() != d.points.len() {
        return Err(ToricError::LengthMismatch { points: d.points.len(), coeffs: coeffs.len() });
    }
    Ok(BivariatePolynomial {
        terms: d
            .points
            .iter()
            .zip(coeffs)
            .map(|(&(x, y), a)| Term { x, y, coeff: a.clone() })
            .collect(),
    })
}

impl BivariatePolynomial {
    /// Builds from terms, merging repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        let mut order = Vec::new();
        for t in terms {
            let e = merged.entry((t.x, t.y)).or_insert_with(|| {
                order.push((t.x, t.y));
                BigInt::zero()
            });
            *e += t.coeff;
        }
        Self {
            terms: order
                .into_iter()
                .map(|(x, y)| Term { x, y, coeff: merged[&(x, y)].clone() })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.coeff.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().next().is_none()
    }

    /// `sum |a_i|`
    pub fn coeff_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// Shift `(s, t)` making every nonzero-term exponent non-negative; only
    /// negative exponents are lifted.
    pub fn normalization_shift(&self) -> (i64, i64) {
        let mx = self.nonzero_terms().map(|t| t.x).min().unwrap_or(0);
        let my = self.nonzero_terms().map(|t| t.y).min().unwrap_or(0);
        ((-mx).max(0), (-my).max(0))
    }

    /// `z^s w^t * self`.
    pub fn shifted(&self, s: i64, t: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|term| Term { x: term.x + s, y: term.y + t, coeff: term.coeff.clone() })
                .collect(),
        }
    }

    /// Copy with exponents made non-negative by [`Self::normalization_shift`].
    pub fn normalized(&self) -> Self {
        let (s, t) = self.normalization_shift();
        self.shifted(s, t)
    }

    /// True when some nonzero term has a negative `z` (resp. `w`) exponent,
    /// i.e. the polynomial is undefined on that coordinate axis.
    pub fn is_laurent(&self) -> (bool, bool) {
        (self.nonzero_terms().any(|t| t.x < 0), self.nonzero_terms().any(|t| t.y < 0))
    }

    /// `d/dz`
    pub fn partial_z(&self) -> Self {
        Self::from_terms(self.nonzero_terms().filter(|t| t.x != 0).map(|t| Term {
            x: t.x - 1,
            y: t.y,
            coeff: &t.coeff * t.x,
        }))
    }

    /// `d/dw`
    pub fn partial_w(&self) -> Self {
        Self::from_terms(self.nonzero_terms().filter(|t| t.y != 0).map(|t| Term {
            x: t.x,
            y: t.y - 1,
            coeff: &t.coeff * t.y,
        }))
    }

    /// True when no nonzero term involves either variable.
    pub fn is_constant(&self) -> bool {
        self.nonzero_terms().all(|t| t.x == 0 && t.y == 0)
    }

    pub fn to_f64_terms(&self) -> Vec<(i32, i32, f64)> {
        self.nonzero_terms()
            .map(|t| (t.x as i32, t.y as i32, t.coeff.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    /// Coefficients of `w^j` as polynomials in `z`; requires non-negative exponents.
    pub(crate) fn by_w_power(&self) -> Vec<IntPolynomial> {
        let max_y = self.nonzero_terms().map(|t| t.y).max().unwrap_or(0).max(0) as usize;
        let max_x = self.nonzero_terms().map(|t| t.x).max().unwrap_or(0).max(0) as usize;
        let mut rows = vec![vec![BigInt::zero(); max_x + 1]; max_y + 1];
        for t in self.nonzero_terms() {
            debug_assert!(t.x >= 0 && t.y >= 0);
            rows[t.y as usize][t.x as usize] += &t.coeff;
        }
        rows.into_iter().map(|r| IntPolynomial::new(r).trimmed()).collect()
    }

    /// Swaps the roles of `z` and `w`.
    pub fn transposed(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term { x: t.y, y: t.x, coeff: t.coeff.clone() })
                .collect(),
        }
    }
}

/// Univariate polynomial in `w` obtained by substituting `z = z0` into the
/// normalized polynomial, cleared of denominators.
///
/// With `z0 = p/q` and `X` the largest `z` exponent, the coefficient of
/// `w^j` is `sum a_i p^(x_i) q^(X - x_i)` over terms with `y_i = j`.
pub fn slice_at_z(p: &BivariatePolynomial, z0: &BigRational) -> Result<IntPolynomial, ToricError> {
    let (z_laurent, w_laurent) = p.is_laurent();
    if z_laurent && z0.is_zero() {
        return Err(ToricError::SliceOutOfDomain);
    }
    let q = p.normalized();
    let max_x = q.nonzero_terms().map(|t| t.x).max().unwrap_or(0) as u32;
    let max_y = q.nonzero_terms().map(|t| t.y).max().unwrap_or(0) as usize;
    let (num, den) = (z0.numer(), z0.denom());
    let mut coeffs = vec![BigInt::zero(); max_y + 1];
    for t in q.nonzero_terms() {
        let x = t.x as u32;
        coeffs[t.y as usize] += &t.coeff * num.pow(x) * den.pow(max_x - x);
    }
    if w_laurent {
        // w = 0 is outside the domain; drop the factor w^k the shift introduced.
        let k = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..k.min(coeffs.len().saturating_sub(1)));
    }
    let slice = IntPolynomial::new(coeffs);
    if slice.is_zero() {
        return Err(ToricError::IdenticallyZeroSlice);
    }
    Ok(slice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::catalog;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn as_i64(p: &IntPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn conifold_newton_polynomial() {
        let d = catalog("conifold").unwrap();
        let p = newton_polynomial(&d, &ints(&[1, 2, 3, 4])).unwrap();
        let got: Vec<(i64, i64, i64)> = p.terms().iter().map(|t| (t.x, t.y, t.coeff.to_i64().unwrap())).collect();
        assert_eq!(got, vec![(0, 0, 1), (1, 0, 2), (0, 1, 3), (1, 1, 4)]);
        assert!(matches!(
            newton_polynomial(&d, &ints(&[1, 2])),
            Err(ToricError::LengthMismatch { points: 4, coeffs: 2 })
        ));
    }

    #[test]
    fn zero_coefficients_are_retained_but_flagged() {
        let d = catalog("dP1").unwrap();
        let p = newton_polynomial(&d, &ints(&[0; 5])).unwrap();
        assert_eq!(p.terms().len(), 5);
        assert!(p.is_zero());
    }

    #[test]
    fn partials_of_laurent_terms() {
        // z^-1 w^2 - 3 z w
        let p = BivariatePolynomial::from_terms([
            Term { x: -1, y: 2, coeff: BigInt::from(1) },
            Term { x: 1, y: 1, coeff: BigInt::from(-3) },
        ]);
        let pz: Vec<_> = p.partial_z().terms().iter().map(|t| (t.x, t.y, t.coeff.to_i64().unwrap())).collect();
        assert_eq!(pz, vec![(-2, 2, -1), (0, 1, -3)]);
        let pw: Vec<_> = p.partial_w().terms().iter().map(|t| (t.x, t.y, t.coeff.to_i64().unwrap())).collect();
        assert_eq!(pw, vec![(-1, 1, 2), (1, 0, -3)]);
        assert_eq!(p.is_laurent(), (true, false));
        assert_eq!(p.normalization_shift(), (1, 0));
    }

    #[test]
    fn slices() {
        let con = newton_polynomial(&catalog("conifold").unwrap(), &ints(&[1, 2, 3, 4])).unwrap();
        let one = BigRational::from_integer(BigInt::from(1));
        assert_eq!(as_i64(&slice_at_z(&con, &one).unwrap()), vec![3, 7]);
        // z = 1/2: (1 + 2/2) + (3 + 4/2) w, times 2.
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(as_i64(&slice_at_z(&con, &half).unwrap()), vec![4, 10]);

        let f0 = newton_polynomial(&catalog("F0").unwrap(), &ints(&[2, -1, 3, 5, 4])).unwrap();
        let s = slice_at_z(&f0, &one).unwrap();
        assert!(s.effective_degree().unwrap() <= 2);
        // w * P(1, w) = (2 + 3 + 4) w - w^2 + 5
        assert_eq!(as_i64(&s), vec![5, 9, -1]);
        let zero = BigRational::from_integer(BigInt::from(0));
        assert!(matches!(slice_at_z(&f0, &zero), Err(ToricError::SliceOutOfDomain)));

        let flat = newton_polynomial(&catalog("conifold").unwrap(), &ints(&[1, -1, 0, 0])).unwrap();
        assert!(matches!(slice_at_z(&flat, &one), Err(ToricError::IdenticallyZeroSlice)));
    }

    #[test]
    fn w_power_rows() {
        let p = newton_polynomial(&catalog("SPP").unwrap(), &ints(&[1, 2, 3, 4, 5])).unwrap();
        let rows = p.by_w_power();
        assert_eq!(rows.len(), 2);
        assert_eq!(as_i64(&rows[0]), vec![1, 2, 3]);
        assert_eq!(as_i64(&rows[1]), vec![4, 5]);
    }
}
