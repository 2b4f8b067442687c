//! Root clouds of constrained integer polynomials.
//!
//! The crate covers the numeric side of the experiments: seeded random
//! polynomial ensembles, Poincare polynomials of Calabi-Yau threefolds and
//! fourfolds, Mobius maps onto the critical strip, Mahler measures, real
//! critical points of toric Newton polynomials, and the binning/writing of the
//! resulting point clouds.

pub mod cy;
pub mod ensembles;
pub mod ingest;
pub mod maps;
pub mod polyroot;
pub mod render;
pub mod toric;

pub use cy::{HodgeCY3, HodgeCY4, Predicate};
pub use ensembles::{EnsembleSpec, Family};
pub use maps::ComplexPoint;
pub use polyroot::{IntPolynomial, RootError, RootSet, SolverConfig};
pub use render::{Bounds, CsvStream, DensityRaster, PointCloud2D, Scale, Sidecar};
pub use toric::{BivariatePolynomial, CriticalPointSet, ToricDiagram};
