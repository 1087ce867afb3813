//! Error type shared by all core modules.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Two values live in different rings (parameter lists or cyclotomic
    /// orders disagree).
    RingMismatch,
    /// The cyclotomic order must be a positive integer.
    InvalidCyclotomicOrder,
    /// `eta(k)`/`zeta(d)` is not expressible in the ambient `Q(zeta_m)`.
    RootNotInField { needed: u32, have: u32 },
    /// Division by zero in the coefficient field.
    DivisionByZero,
    /// Dimensions of the operands do not match.
    DimensionMismatch,
    /// The operation needs a parameter-free value; specialize the parameters
    /// first (rank-type computations are not defined for parametric input).
    RequiresSpecialization,
    /// A substitution hit a declared nonvanishing constraint.
    ConstraintViolated { constraint: String },
    /// A constraint polynomial must not be identically zero.
    ZeroConstraint,
    /// The power chain did not reach zero within the cutoff.
    NotNilpotentWithinBound { cutoff: u32 },
    /// The annihilator is zero, so there is nothing to split off.
    NoAnnihilator,
    /// An automorphism matrix must be verified before it may act.
    UnverifiedAutomorphism,
    /// Structure-constant index out of range.
    IndexOutOfRange { index: usize, dim: usize },
}

impl core::error::Error for CoreError {}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::RingMismatch => write!(f, "ring mismatch: operands have different parameter lists or cyclotomic orders"),
            CoreError::InvalidCyclotomicOrder => write!(f, "cyclotomic order must be >= 1"),
            CoreError::RootNotInField { needed, have } => {
                write!(f, "root of unity of order {needed} is not contained in Q(zeta_{have})")
            }
            CoreError::DivisionByZero => write!(f, "division by zero"),
            CoreError::DimensionMismatch => write!(f, "dimension mismatch"),
            CoreError::RequiresSpecialization => {
                write!(f, "operation requires parameter-free entries; specialize the parameters first")
            }
            CoreError::ConstraintViolated { constraint } => {
                write!(f, "substitution violates nonvanishing constraint `{constraint}`")
            }
            CoreError::ZeroConstraint => write!(f, "constraint polynomial is identically zero"),
            CoreError::NotNilpotentWithinBound { cutoff } => {
                write!(f, "power chain did not reach zero within {cutoff} steps")
            }
            CoreError::NoAnnihilator => write!(f, "algebra has zero annihilator"),
            CoreError::UnverifiedAutomorphism => write!(f, "automorphism must be verified before acting"),
            CoreError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
        }
    }
}
