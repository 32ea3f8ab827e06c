//! Commutativity-preserving cohomology of finite groups.
//!
//! Groups are concrete Cayley tables. Cohomology with coefficients in a finite
//! module is computed exactly over Z/m, which yields the Schur multiplier `M`,
//! its commuting part `M0` and the Bogomolov multiplier `B0 = M / M0`.

pub mod bound;
pub mod catalog;
pub mod cohomology;
pub mod coset;
pub mod covers;
pub mod error;
pub mod exterior;
pub mod extensions;
pub mod group;
pub mod iso;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;

/// Exact rational numbers.
pub type Rational = num_rational::Ratio<BigInt>;
/// Machine-integer matrix.
pub type IntMatrix = linalg::Matrix<i64>;
/// Arbitrary-precision integer matrix.
pub type BigIntMatrix = linalg::Matrix<BigInt>;
