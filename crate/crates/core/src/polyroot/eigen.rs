//! Eigenvalues of small dense real upper-Hessenberg matrices.
//!
//! Companion matrices are already Hessenberg, so no reduction step is needed:
//! the matrix is balanced and then handed to the Francis double-shift QR
//! iteration.

use num_complex::Complex64;

/// Row-major square matrix.
#[derive(Clone, Debug)]
pub(crate) struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub(crate) fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        *self.at_mut(i, j) = v;
    }
}

/// Companion matrix of the monic polynomial with ascending coefficients
/// `c[0] .. c[n-1]` (the leading 1 implied): first row holds `-c[n-1] .. -c[0]`.
pub(crate) fn companion(monic_tail: &[f64]) -> Matrix {
    let n = monic_tail.len();
    let mut m = Matrix::zeros(n);
    for j in 0..n {
        m.set(0, j, -monic_tail[n - 1 - j]);
    }
    for i in 1..n {
        m.set(i, i - 1, 1.0);
    }
    m
}

/// Similarity scaling by powers of two so row and column norms are comparable.
pub(crate) fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    let n = a.n;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.at(j, i).abs();
                    r += a.at(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= SQRDX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= SQRDX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    *a.at_mut(i, j) *= ginv;
                }
                for j in 0..n {
                    *a.at_mut(j, i) *= f;
                }
            }
        }
    }
}

/// All eigenvalues of an upper-Hessenberg matrix (destroyed in the process).
///
/// Returns `None` if some eigenvalue fails to deflate within the iteration budget.
pub(crate) fn hessenberg_eigenvalues(a: &mut Matrix) -> Option<Vec<Complex64>> {
    let n = a.n;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Some(out);
    }
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a.at(i, j).abs();
        }
    }
    let max_its = 30 * n.max(2);

    let mut nn = n as isize - 1;
    let mut shift_total = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // Look for a single small subdiagonal element.
            let mut l = nu;
            while l >= 1 {
                let mut s = a.at(l - 1, l - 1).abs() + a.at(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a.at(l, l - 1).abs() <= f64::EPSILON * s {
                    a.set(l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = a.at(nu, nu);
            if l == nu {
                out[nu] = Complex64::new(x + shift_total, 0.0);
                nn -= 1;
                break;
            }
            let mut y = a.at(nu - 1, nu - 1);
            let mut w = a.at(nu, nu - 1) * a.at(nu - 1, nu);
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += shift_total;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    let lo = if z != 0.0 { x - w / z } else { x + z };
                    out[nu - 1] = Complex64::new(x + z, 0.0);
                    out[nu] = Complex64::new(lo, 0.0);
                } else {
                    out[nu - 1] = Complex64::new(x + p, -z);
                    out[nu] = Complex64::new(x + p, z);
                }
                nn -= 2;
                break;
            }
            if its == max_its {
                return None;
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift, alternately from the bottom and the top of
                // the active block; breaks cycles on symmetric spectra.
                shift_total += x;
                for i in 0..=nu {
                    *a.at_mut(i, i) -= x;
                }
                let s = if (its / 10) % 2 == 1 {
                    a.at(nu, nu - 1).abs() + a.at(nu - 1, nu - 2).abs()
                } else {
                    a.at(l + 1, l).abs() + a.at(l + 2, l + 1).abs()
                };
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Form the shift and look for two consecutive small subdiagonal elements.
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a.at(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a.at(m + 1, m) + a.at(m, m + 1);
                q = a.at(m + 1, m + 1) - z - rr - ss;
                r = a.at(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a.at(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (a.at(m - 1, m - 1).abs() + z.abs() + a.at(m + 1, m + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a.set(i, i - 2, 0.0);
                if i != m + 2 {
                    a.set(i, i - 3, 0.0);
                }
            }

            // Double QR step on rows l..=nu, columns m..=nu.
            let mut xx = 0.0;
            for k in m..nu {
                if k != m {
                    p = a.at(k, k - 1);
                    q = a.at(k + 1, k - 1);
                    r = if k != nu - 1 { a.at(k + 2, k - 1) } else { 0.0 };
                    xx = p.abs() + q.abs() + r.abs();
                    if xx != 0.0 {
                        p /= xx;
                        q /= xx;
                        r /= xx;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        let v = -a.at(k, k - 1);
                        a.set(k, k - 1, v);
                    }
                } else {
                    a.set(k, k - 1, -s * xx);
                }
                p += s;
                xx = p / s;
                let yy = q / s;
                let zz = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pj = a.at(k, j) + q * a.at(k + 1, j);
                    if k != nu - 1 {
                        pj += r * a.at(k + 2, j);
                        *a.at_mut(k + 2, j) -= pj * zz;
                    }
                    *a.at_mut(k + 1, j) -= pj * yy;
                    *a.at_mut(k, j) -= pj * xx;
                }
                let mmin = nu.min(k + 3);
                for i in l..=mmin {
                    let mut pi = xx * a.at(i, k) + yy * a.at(i, k + 1);
                    if k != nu - 1 {
                        pi += zz * a.at(i, k + 2);
                        *a.at_mut(i, k + 2) -= pi * r;
                    }
                    *a.at_mut(i, k + 1) -= pi * q;
                    *a.at_mut(i, k) -= pi;
                }
            }
        }
    }
    Some(out)
}
