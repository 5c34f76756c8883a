//! Exact algebra for rational curves on the Z3 and Z7 torus orbifolds.

pub mod census;
pub mod embedverify;
pub mod numkernel;
pub mod orbifold;
pub mod profsearch;
pub mod ratmap;

pub use numkernel::{AlgebraicNumber, FieldTower, NumError, Polynomial, Q};
pub use ratmap::{ProjectivePoint, RamificationProfile, RationalFunction, Target};
