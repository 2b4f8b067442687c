mod common;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rootcloud_core::toric::{
    catalog, critical_point_sweep, newton_polynomial, real_critical_points, BivariatePolynomial, CoefficientSampler,
    ToricError,
};

fn laurent(p: &BivariatePolynomial) -> common::Laurent {
    common::Laurent {
        terms: p
            .nonzero_terms()
            .map(|t| (t.x as i32, t.y as i32, t.coeff.to_f64().unwrap()))
            .collect(),
    }
}

fn poly(name: &str, c: &[i64]) -> BivariatePolynomial {
    let c: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
    newton_polynomial(&catalog(name).unwrap(), &c).unwrap()
}

fn residual_ok(p: &BivariatePolynomial, z: f64, w: f64) -> bool {
    let g = laurent(p).grad(z, w);
    let tol = 1e-7 * (1.0 + p.coeff_l1());
    g[0].abs() < tol && g[1].abs() < tol
}

#[test]
fn f0_matches_fine_grid_oracle() {
    // Coefficients on (1,0),(0,1),(-1,0),(0,-1),(0,0).
    let p = poly("F0", &[3, 2, 5, 7, -4]);
    let set = real_critical_points(&p).unwrap();
    let oracle = common::grid_critical_points(&laurent(&p), 200, 20.0);
    assert_eq!(oracle.len(), 4);
    assert!(common::missed(&oracle, &set.points, 1e-7).is_empty(), "{:?} vs {:?}", oracle, set.points);
    for &(z, w) in &set.points {
        assert!(residual_ok(&p, z, w));
    }
}

#[test]
fn f0_points_are_those_of_the_laurent_polynomial() {
    // z + w + 1/z + 1/w has its saddles at (+-1, +-1); multiplying by z w
    // would instead add critical points on the axes.
    let p = poly("F0", &[1, 1, 1, 1, 0]);
    let set = real_critical_points(&p).unwrap();
    assert_eq!(set.points, vec![(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]);
    let shifted = real_critical_points(&p.normalized()).unwrap();
    assert_ne!(shifted.points, set.points);
    let oracle = common::grid_critical_points(&laurent(&p.normalized()), 60, 20.0);
    assert!(common::missed(&oracle, &shifted.points, 1e-7).is_empty());
}

#[test]
fn conifold_sweep_is_the_quotient_cloud() {
    let d = catalog("conifold").unwrap();
    let s = CoefficientSampler { count: 300, coeff_min: -10, coeff_max: 10, seed: 5 };
    let out = critical_point_sweep(&d, &s).unwrap();
    let mut expect = Vec::new();
    for i in 0..s.count {
        let c: Vec<i64> = s.coefficients(4, i).iter().map(|v| v.to_i64().unwrap()).collect();
        let (b, cc, dd) = (c[1], c[2], c[3]);
        if dd != 0 {
            expect.push((-(cc as f64) / dd as f64, -(b as f64) / dd as f64));
        }
    }
    assert_eq!(out.cloud.len(), expect.len());
    for (got, want) in out.cloud.points().iter().zip(&expect) {
        assert!((got.0 - want.0).abs() < 1e-9 && (got.1 - want.1).abs() < 1e-9);
    }
}

#[test]
fn reflexive_diagrams_agree_with_coarse_oracle() {
    for name in ["SPP", "dP0", "dP1", "dP2", "dP3"] {
        let d = catalog(name).unwrap();
        let s = CoefficientSampler { count: 40, coeff_min: -10, coeff_max: 10, seed: 99 };
        let mut agree = 0;
        let mut total = 0;
        for i in 0..s.count {
            let p = newton_polynomial(&d, &s.coefficients(d.len(), i)).unwrap();
            let set = match real_critical_points(&p) {
                Ok(set) => set,
                Err(ToricError::DegenerateSystem(_)) | Err(ToricError::ZeroPolynomial) => continue,
                Err(e) => panic!("{name} draw {i}: {e}"),
            };
            for &(z, w) in &set.points {
                assert!(residual_ok(&p, z, w), "{name} draw {i}: ({z}, {w})");
            }
            total += 1;
            if common::missed(&common::grid_critical_points(&laurent(&p), 40, 20.0), &set.points, 1e-7).is_empty() {
                agree += 1;
            }
        }
        assert!(agree * 100 >= total * 95, "{name}: {agree}/{total}");
    }
}
