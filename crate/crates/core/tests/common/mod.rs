//! Independent reference solvers used only by tests.
#![allow(dead_code)]

use num_complex::Complex64;

/// Horner with a running error bound.
fn eval(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous iteration from seeds on a circle.
pub fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.iter().rposition(|c| *c != 0.0).expect("nonzero polynomial");
    let c = &coeffs[..=n];
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n].abs();
    let radius = (0..n)
        .filter(|&i| c[i] != 0.0)
        .map(|i| (c[i].abs() / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = false;
        for i in 0..n {
            let (p, dp) = eval(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Greedy matching of two root multisets; returns the worst relative distance.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "root counts differ");
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm() / (1.0 + x.norm())))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Laurent polynomial `sum a z^x w^y` with its own derivative code.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub terms: Vec<(i32, i32, f64)>,
}

impl Laurent {
    fn mono(z: f64, w: f64, x: i32, y: i32) -> f64 {
        z.powi(x) * w.powi(y)
    }

    pub fn grad(&self, z: f64, w: f64) -> [f64; 2] {
        let mut g = [0.0; 2];
        for &(x, y, a) in &self.terms {
            if x != 0 {
                g[0] += a * x as f64 * Self::mono(z, w, x - 1, y);
            }
            if y != 0 {
                g[1] += a * y as f64 * Self::mono(z, w, x, y - 1);
            }
        }
        g
    }

    pub fn hess(&self, z: f64, w: f64) -> [[f64; 2]; 2] {
        let mut h = [[0.0; 2]; 2];
        for &(x, y, a) in &self.terms {
            let (xf, yf) = (x as f64, y as f64);
            if x != 0 && x != 1 {
                h[0][0] += a * xf * (xf - 1.0) * Self::mono(z, w, x - 2, y);
            }
            if x != 0 && y != 0 {
                let v = a * xf * yf * Self::mono(z, w, x - 1, y - 1);
                h[0][1] += v;
                h[1][0] += v;
            }
            if y != 0 && y != 1 {
                h[1][1] += a * yf * (yf - 1.0) * Self::mono(z, w, x, y - 2);
            }
        }
        h
    }

    /// Sum of absolute values of the terms of both partials.
    fn grad_scale(&self, z: f64, w: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(x, y, a)| {
                let dz = if x != 0 { (a * x as f64 * Self::mono(z, w, x - 1, y)).abs() } else { 0.0 };
                let dw = if y != 0 { (a * y as f64 * Self::mono(z, w, x, y - 1)).abs() } else { 0.0 };
                dz + dw
            })
            .sum()
    }

    pub fn laurent_axes(&self) -> (bool, bool) {
        (self.terms.iter().any(|t| t.0 < 0), self.terms.iter().any(|t| t.1 < 0))
    }
}

/// Real critical points found by damped Newton from an `n x n` grid of seeds
/// on `[-half, half]^2`.
pub fn grid_critical_points(p: &Laurent, n: usize, half: f64) -> Vec<(f64, f64)> {
    let (zl, wl) = p.laurent_axes();
    let norm = |g: [f64; 2]| g[0].hypot(g[1]);
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // Offset by half a cell so no seed sits on an axis.
            let mut z = -half + (i as f64 + 0.5) * 2.0 * half / n as f64;
            let mut w = -half + (j as f64 + 0.5) * 2.0 * half / n as f64;
            let mut r = norm(p.grad(z, w));
            for _ in 0..100 {
                let g = p.grad(z, w);
                let h = p.hess(z, w);
                let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                if det == 0.0 || !det.is_finite() {
                    break;
                }
                let dz = (h[1][1] * g[0] - h[0][1] * g[1]) / det;
                let dw = (h[0][0] * g[1] - h[1][0] * g[0]) / det;
                let mut t = 1.0;
                let mut accepted = false;
                for _ in 0..30 {
                    let (nz, nw) = (z - t * dz, w - t * dw);
                    let nr = norm(p.grad(nz, nw));
                    if nr.is_finite() && nr < r {
                        z = nz;
                        w = nw;
                        r = nr;
                        accepted = true;
                        break;
                    }
                    t *= 0.5;
                }
                if !accepted || (t * dz).abs() + (t * dw).abs() < 1e-16 * (1.0 + z.abs() + w.abs()) {
                    break;
                }
            }
            if !(z.abs() <= half && w.abs() <= half) {
                continue;
            }
            if (zl && z.abs() < 1e-6) || (wl && w.abs() < 1e-6) {
                continue;
            }
            // A few ulps of the term scale; flat spots near double points stay above this.
            if r > 1e-11 * p.grad_scale(z, w).max(1e-300) {
                continue;
            }
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-7 * a.abs().max(b.abs()).max(1.0);
            if !found.iter().any(|&(fz, fw)| close(fz, z) && close(fw, w)) {
                found.push((z, w));
            }
        }
    }
    found
}

/// Oracle points with no solver point within `tol` (relative above magnitude 1).
pub fn missed(oracle: &[(f64, f64)], solver: &[(f64, f64)], tol: f64) -> Vec<(f64, f64)> {
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
    oracle
        .iter()
        .copied()
        .filter(|&(z, w)| !solver.iter().any(|&(sz, sw)| close(sz, z) && close(sw, w)))
        .collect()
}
