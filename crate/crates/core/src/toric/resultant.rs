//! Sylvester resultants over `Z[z]`.
//!
//! A polynomial in `w` with coefficients in `Z[z]` is a slice of
//! [`IntPolynomial`]s, index `j` holding the coefficient of `w^j`. The
//! determinant of the Sylvester matrix is computed by fraction-free (Bareiss)
//! elimination, whose divisions are exact in `Z[z]`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyroot::IntPolynomial;

fn w_degree(p: &[IntPolynomial]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// `Res_w(f, g)` as a polynomial in `z`.
///
/// Degrees in `w` are the true degrees of `f` and `g`. Both being constant in
/// `w` gives the empty determinant, 1. The zero polynomial as either argument
/// gives 0.
pub fn sylvester_resultant(f: &[IntPolynomial], g: &[IntPolynomial]) -> IntPolynomial {
    let (Some(m), Some(n)) = (w_degree(f), w_degree(g)) else {
        return IntPolynomial::zero();
    };
    let size = m + n;
    if size == 0 {
        return IntPolynomial::from_i64s(&[1]);
    }
    let mut mat = vec![vec![IntPolynomial::zero(); size]; size];
    // n rows of f's coefficients (highest power first), then m rows of g's.
    for r in 0..n {
        for (k, c) in f[..=m].iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g[..=n].iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

fn primitive_part(p: &IntPolynomial) -> IntPolynomial {
    let p = p.trimmed();
    let c = p.content();
    if c.is_zero() {
        return p;
    }
    let c = if p.leading() < BigInt::zero() { -c } else { c };
    IntPolynomial::new(p.coeffs().iter().map(|a| a / &c).collect())
}

/// `lc(b)^k a mod b`, the pseudo-remainder.
fn pseudo_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.effective_degree().expect("nonzero divisor");
    let lb = b.leading();
    let mut r = a.trimmed();
    while let Some(dr) = r.effective_degree() {
        if dr < db || r.is_zero() {
            break;
        }
        let lr = r.leading();
        let shifted = &IntPolynomial::monomial(lr, dr - db) * b;
        r = (&r.scale(&lb) - &shifted).trimmed();
    }
    r
}

/// Primitive gcd in `Z[z]`, normalized to a positive leading coefficient.
/// The gcd of an empty family and of all-zero polynomials is 0.
pub fn polynomial_gcd<'a>(polys: impl IntoIterator<Item = &'a IntPolynomial>) -> IntPolynomial {
    let mut acc = IntPolynomial::zero();
    for p in polys {
        let (mut a, mut b) = (primitive_part(&acc), primitive_part(p));
        if a.is_zero() {
            acc = b;
            continue;
        }
        while !b.is_zero() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = primitive_part(&r);
        }
        acc = a;
        if acc.effective_degree() == Some(0) {
            return IntPolynomial::from_i64s(&[1]);
        }
    }
    acc
}

/// Determinant of a square matrix over `Z[z]`.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = a.len();
    if n == 0 {
        return IntPolynomial::from_i64s(&[1]);
    }
    let mut negate = false;
    let mut prev = IntPolynomial::from_i64s(&[1]);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].trimmed();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_complex::Complex64;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// `lc(f)^n lc(g)^m prod (alpha_i - beta_j)` from numeric roots.
    fn product_formula(f: &[f64], g: &[f64]) -> f64 {
        let roots = |c: &[f64]| {
            crate::polyroot::roots(&IntPolynomial::new(c.iter().map(|&v| BigInt::from(v as i64)).collect()))
                .map(|r| r.roots)
                .unwrap_or_default()
        };
        let (m, n) = (f.len() - 1, g.len() - 1);
        let (fa, gb) = (roots(f), roots(g));
        let mut prod = Complex64::new(f[m].powi(n as i32) * g[n].powi(m as i32), 0.0);
        for a in &fa {
            for b in &gb {
                prod *= a - b;
            }
        }
        prod.re
    }

    #[test]
    fn constant_coefficient_resultants() {
        // f = w - 2, g = w^2 - 5  =>  Res = g(2) = -1
        let f = [p(&[-2]), p(&[1])];
        let g = [p(&[-5]), p(&[0]), p(&[1])];
        assert_eq!(sylvester_resultant(&f, &g), p(&[-1]));
        // Degree-zero argument: Res(c, g) = c^deg g
        assert_eq!(sylvester_resultant(&[p(&[3])], &g), p(&[9]));
        assert_eq!(sylvester_resultant(&[p(&[3])], &[p(&[4])]), p(&[1]));
        assert_eq!(sylvester_resultant(&[p(&[0])], &g), p(&[0]));
    }

    #[test]
    fn eliminates_w() {
        // f = w - z, g = w + z - 2  => Res_w = g(z) with w=z: 2z - 2
        let f = [p(&[0, -1]), p(&[1])];
        let g = [p(&[-2, 1]), p(&[1])];
        assert_eq!(sylvester_resultant(&f, &g), p(&[-2, 2]));
    }

    #[test]
    fn common_factor_gives_zero() {
        // f = (w - z)(w + 1), g = (w - z)(w - 3)
        let f = [p(&[0, -1]), p(&[1, -1]), p(&[1])];
        let g = [p(&[0, 3]), p(&[-3, -1]), p(&[1])];
        assert!(sylvester_resultant(&f, &g).is_zero());
    }

    #[test]
    fn agrees_with_product_formula_at_sample_points() {
        // f = (z+1) w^2 + (2z - 3) w + z^2 - 1, g = 3 w^2 - z w + (2 - z^3)
        let f = [p(&[-1, 0, 1]), p(&[-3, 2]), p(&[1, 1])];
        let g = [p(&[2, 0, 0, -1]), p(&[0, -1]), p(&[3])];
        let res = sylvester_resultant(&f, &g);
        for z0 in [-3i64, 2, 3, 5] {
            let ev = |c: &[IntPolynomial]| -> Vec<f64> {
                c.iter().map(|q| q.evaluate_int(&BigInt::from(z0)).to_f64().unwrap()).collect()
            };
            let expect = product_formula(&ev(&f), &ev(&g));
            let got = res.evaluate_int(&BigInt::from(z0)).to_f64().unwrap();
            assert!((got - expect).abs() <= 1e-9 * expect.abs().max(1.0), "z0={z0}: {got} vs {expect}");
        }
    }

    #[test]
    fn gcd_of_families() {
        // (z - 1)(z + 2) and (z - 1)(3z + 5)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-5, 2, 3]);
        assert_eq!(polynomial_gcd([&a, &b]), p(&[-1, 1]));
        assert_eq!(polynomial_gcd([&a, &b, &p(&[7])]), p(&[1]));
        assert_eq!(polynomial_gcd([&p(&[0]), &p(&[0, -4, -2])]), p(&[0, 2, 1]));
        assert!(polynomial_gcd([&p(&[0])]).is_zero());
        assert_eq!(polynomial_gcd([&p(&[6, 4])]), p(&[3, 2]));
    }

    #[test]
    fn bareiss_pivots_through_zero_diagonal() {
        let m = vec![
            vec![p(&[0]), p(&[1]), p(&[0])],
            vec![p(&[1]), p(&[0]), p(&[0])],
            vec![p(&[0]), p(&[0]), p(&[0, 1])],
        ];
        assert_eq!(bareiss_determinant(m), p(&[0, -1]));
    }
}
