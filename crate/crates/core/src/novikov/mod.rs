//! Novikov-field scalars and Laurent series over them: valuations, the trop
//! map, Gauss valuations over polytopes, base-point shifts, energies and
//! numeric evaluation of class series.
//!
//! Exponents are exact rationals. A scalar carries a cutoff below which it
//! is known exactly; arithmetic propagates the cutoff so that every reported
//! term is exact.

mod energy;
mod laurent;
mod scalar;

pub use energy::{assign_energies, evaluate, to_laurent, EnergyAssignment};
pub use laurent::{
    base_point_shift, gauss_valuation, toric_superpotential, toric_superpotential_with_corrections,
    NovikovLaurent,
};
pub use scalar::{trop, NovikovScalar, ScalarRecord, Valuation};

use thiserror::Error;

use crate::fan::FanError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("DivisionByZero: the scalar has no nonzero term")]
    DivisionByZero,
    #[error("InfiniteExpansion: inverting exact `{0}` needs a cutoff")]
    InfiniteExpansion(String),
    #[error("ZeroCoordinate: coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("EmptyPolytope: at least one vertex is required")]
    EmptyPolytope,
    #[error("OutsidePolytope: facet {0} has ℓ_i(q) ≤ 0")]
    OutsidePolytope(usize),
    #[error("EnergyViolation: E({0}) must be positive")]
    EnergyViolation(String),
    #[error("MissingEnergy: no sphere energies for class {0}")]
    MissingEnergy(String),
    #[error("Parse: cannot read Novikov scalar `{0}`")]
    Parse(String),
    #[error("{0}")]
    Fan(#[from] FanError),
}
