//! Exact computational kernel for finite-dimensional commutative nilpotent
//! algebras over cyclotomic-rational fields.
//!
//! The crate provides, bottom up:
//!
//! * [`scalar`] — arbitrary-precision rationals extended by roots of unity,
//!   i.e. elements of `Q(zeta_m)` reduced modulo the m-th cyclotomic
//!   polynomial;
//! * [`poly`] — sparse multivariate polynomials in named parameters with
//!   such coefficients, plus nonvanishing constraints;
//! * [`linalg`] — dense exact linear algebra (RREF, kernels, sums,
//!   intersections, canonical quotient coordinates);
//! * [`algebra`] — structure-constant algebras: products, power chains,
//!   annihilators and polynomial identity checking (associative, Jordan,
//!   CD);
//! * [`cohomology`] — symmetric 2-cocycles in the `Delta_ij` basis,
//!   coboundaries, the CD-cocycle subspace and the induced quotients;
//! * [`extension`] — central extensions and the inverse construction
//!   (splitting off the annihilator);
//! * [`autaction`] — verified automorphisms acting on cocycles and
//!   cohomology classes.
//!
//! Everything is exact: no floating point, no modular shortcuts. All values
//! are immutable after construction and safe to share across threads.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algebra;
pub mod autaction;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod sympair;

pub use algebra::{AlgebraTable, Element, IdentityKind, IdentityReport};
pub use autaction::AutMap;
pub use cohomology::{CohomologySpaces, SymCocycle};
pub use error::CoreError;
pub use extension::SplitExtension;
pub use linalg::{Matrix, Subspace};
pub use poly::{Constraint, Param, Poly, Ring, RingRef};
pub use scalar::{CycField, Scalar};

/// Arbitrary-precision rational number used throughout the crate.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer backing [`Rational`].
pub type Integer = num_bigint::BigInt;
