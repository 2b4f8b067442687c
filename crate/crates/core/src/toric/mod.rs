//! Toric diagrams, their Newton polynomials, and the real critical points of
//! those polynomials.

mod bivariate;
mod catalog;
mod critical;
mod resultant;
mod slice;

use std::fmt;

use thiserror::Error;

use crate::polyroot::RootError;

pub use bivariate::{newton_polynomial, slice_at_z, BivariatePolynomial, Term};
pub use catalog::{catalog, find, load_catalog, parse_catalog, ToricDiagram, CATALOG_NAMES, DEFAULT_CATALOG};
pub use critical::{
    critical_point_sweep, critical_point_sweep_with, real_critical_points, real_critical_points_with, solve_draw,
    CoefficientSampler, CriticalConfig, CriticalPointSet, DrawOutcome, GradientField, SweepOutcome,
};
pub use resultant::{polynomial_gcd, sylvester_resultant};
pub use slice::{slice_root_sweep, SliceOutcome};

/// Why a critical-point system has no isolated solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    /// One of the partial derivatives vanishes identically.
    PartialIdenticallyZero,
    /// A partial derivative is a nonzero constant (or the polynomial is affine).
    ConstantPartial,
    /// The two partials share a curve of common zeros.
    CommonComponent,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::PartialIdenticallyZero => "a partial derivative is identically zero",
            Degeneracy::ConstantPartial => "a partial derivative is constant",
            Degeneracy::CommonComponent => "the partial derivatives share a common component",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("unknown toric diagram {0:?}")]
    UnknownDiagram(String),
    #[error("diagram {diagram:?} lists point {point:?} twice")]
    DuplicatePoint { diagram: String, point: (i64, i64) },
    #[error("catalog line {line}: {msg}")]
    CatalogParse { line: usize, msg: String },
    #[error("diagram has {points} points but {coeffs} coefficients were given")]
    LengthMismatch { points: usize, coeffs: usize },
    #[error("the slice polynomial is identically zero")]
    IdenticallyZeroSlice,
    #[error("z0 = 0 is outside the domain of a Laurent polynomial in z")]
    SliceOutOfDomain,
    #[error("the Newton polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degenerate critical-point system: {0}")]
    DegenerateSystem(Degeneracy),
    #[error("empty coefficient range [{min}, {max}]")]
    EmptyRange { min: i64, max: i64 },
    #[error(transparent)]
    Numeric(#[from] RootError),
}
