//! Characteristic masses of integral lattices and dimensions of invariants
//! in irreducible representations of orthogonal groups.
//!
//! All arithmetic is exact. The dense linear algebra in [`linalg`] is generic
//! over any `num_traits` ring; the rest of the crate works over [`Int`] and
//! [`Rational`].

pub mod checks;
pub mod cycpoly;
pub mod dims;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod reptheory;
pub mod umbral;
pub mod weylmass;

pub use cycpoly::{CycloProduct, IntPoly};
pub use error::{Error, Result};
pub use reptheory::Partition;
pub use weylmass::{CosetCycle, IrredKind, MassMap};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntMatrix = linalg::Matrix<Int>;
pub type RationalMatrix = linalg::Matrix<Rational>;
