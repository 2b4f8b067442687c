use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Univariate polynomial with exact integer coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`. Leading zeros are kept as given so
/// ingestion paths can report what was trimmed; [`IntPolynomial::effective_degree`]
/// always looks past them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![BigInt::zero()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Index of the highest nonzero coefficient, `None` for the zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Copy with leading zero coefficients removed (the zero polynomial keeps one entry).
    pub fn trimmed(&self) -> Self {
        let len = self.effective_degree().map_or(1, |d| d + 1);
        Self::new(self.coeffs[..len].to_vec())
    }

    pub fn leading(&self) -> BigInt {
        self.effective_degree()
            .map_or_else(BigInt::zero, |d| self.coeffs[d].clone())
    }

    /// `coeffs[i] == coeffs[deg - i]` over the effective degree.
    pub fn is_palindromic(&self) -> bool {
        match self.effective_degree() {
            None => true,
            Some(d) => (0..=d / 2).all(|i| self.coeffs[i] == self.coeffs[d - i]),
        }
    }

    /// Exact value at an integer point.
    pub fn evaluate_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation in binary64.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.to_f64(), z)
    }

    /// Coefficients rounded to the nearest binary64 (exact below 2^53).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Quotient by `divisor`, provided the division is exact over Z.
    ///
    /// Returns `None` when `divisor` is zero or leaves a remainder (or a
    /// non-integral quotient coefficient).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.effective_degree()?;
        let lead = &divisor.coeffs[dd];
        let Some(nd) = self.effective_degree() else {
            return Some(Self::zero());
        };
        if nd < dd {
            return None;
        }
        let mut rem: Vec<BigInt> = self.coeffs[..=nd].to_vec();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs[..=dd].iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Largest `k` with `(t + 1)^k` dividing the polynomial, by repeated exact
    /// synthetic division at `-1`.
    pub fn multiplicity_at_minus_one(&self) -> Option<usize> {
        let deg = self.effective_degree()?;
        let mut current: Vec<BigInt> = self.coeffs[..=deg].to_vec();
        let mut k = 0;
        while current.len() > 1 {
            // Synthetic division by (t + 1): quotient q_{i-1} = c_i - q_i.
            let n = current.len() - 1;
            let mut quot = vec![BigInt::zero(); n];
            let mut carry = BigInt::zero();
            for i in (1..=n).rev() {
                carry = &current[i] - carry;
                quot[i - 1] = carry.clone();
            }
            let remainder = &current[0] - carry;
            if !remainder.is_zero() {
                break;
            }
            current = quot;
            k += 1;
        }
        Some(k)
    }
}

/// Horner evaluation of an ascending binary64 coefficient list.
pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative in one pass.
pub(crate) fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.effective_degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for (i, c) in self.coeffs[..=deg].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (Some(da), Some(db)) = (self.effective_degree(), rhs.effective_degree()) else {
            return IntPolynomial::zero();
        };
        let mut out = vec![BigInt::zero(); da + db + 1];
        for (i, a) in self.coeffs[..=da].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=db].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
