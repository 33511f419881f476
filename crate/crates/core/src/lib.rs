//! Verification toolkit for quadratic generation of Cox rings of Del Pezzo
//! surfaces: Picard lattice arithmetic, exceptional curves, capture games
//! with divisor-specific validity checks, and an interpolation oracle for
//! Betti numbers.

pub mod cli;
pub mod curves;
pub mod error;
pub mod game;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod validity;

pub use curves::{enumerate_exceptional, CurveKind, CurveLabel, ExceptionalCurve, SurfaceModel};
pub use error::{Error, Result};
pub use lattice::{canonical_class, intersect, reflect, weyl_roots, DivisorClass, RootClass};

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// The prime field `F_p`, `p = 2^31 - 1`.
pub type PrimeField = scalar::Fp;
/// Interpolation oracle over the rationals.
pub type ExactOracle = oracle::CoxOracle<Rational>;
/// Interpolation oracle over `F_p`.
pub type ModularOracle = oracle::CoxOracle<PrimeField>;
