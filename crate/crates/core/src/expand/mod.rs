//! Expansion coefficients in Jacobi, Gegenbauer, Legendre and Chebyshev
//! bases, conversions between them, derivative coefficients, and
//! projection-error norms.

mod basis;
mod cheb_algebra;
mod coeffs;
mod convert;
mod eval;
mod function;
mod norms;

pub use basis::{Basis, CoefficientSeries};
pub use coeffs::{
    chebyshev_coeffs, coefficients, gegenbauer_coeffs, jacobi_coeffs, legendre_coeffs,
    check_l2w, coefficients_with, CoeffOptions,
};
pub use convert::{convert_jacobi_to_chebyshev, convert_jacobi_to_gegenbauer, derivative_coeffs};
pub use eval::evaluate_projection;
pub use function::{Point, SingularFactor, SingularFunction, Site, SmoothTerm};
pub use norms::{
    check_sobolev, l2w_projection_error, l2w_projection_error_detail, sobolev_projection_error,
    sobolev_projection_error_detail, ProjectionError,
};

use thiserror::Error;

use crate::quad::QuadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpandError {
    #[error("function is not in the weighted L2 space: {0}")]
    NotInL2w(String),
    #[error("function is not in the weighted Sobolev space: {0}")]
    NotInSobolev(String),
    #[error(transparent)]
    NoConvergence(#[from] QuadError),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("series too short: {0}")]
    LengthError(String),
    #[error("unstored tail {unstored:e} exceeds 10% of stored tail {stored:e}")]
    TailDominates { stored: f64, unstored: f64 },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
}
