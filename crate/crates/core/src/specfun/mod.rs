//! Special functions: log-gamma, classical orthogonal polynomials and their
//! norms, real-order Bessel functions of the first kind, and the Hilb-type
//! Bessel approximation of Jacobi polynomials.
//!
//! Every function here is pure and allocation-free on the hot path.

mod bessel;
mod gamma;
mod hilb;
mod poly;

pub use bessel::{bessel_j, bessel_moment_closed_form};
pub use gamma::ln_gamma;
pub use hilb::{hilb_main_term, hilb_weight};
pub use poly::{
    chebyshev_t, gegenbauer_c, gegenbauer_norm, jacobi_norm, jacobi_p, GegenbauerRecurrence,
    JacobiRecurrence,
};

pub(crate) use bessel::bessel_j_unchecked;
pub(crate) use gamma::{ln_gamma_pos, ln_gamma_signed};
pub(crate) use poly::{gegenbauer_jacobi_factor, jacobi_ln_norm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{what}: {detail}")]
    Domain { what: &'static str, detail: String },
}

/// Jacobi weight parameters `(α, β)` with `α, β > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, SpecFunError> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(SpecFunError::Domain {
                what: "JacobiParams",
                detail: format!("need alpha > -1 and beta > -1, got ({alpha}, {beta})"),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Parameters of the Legendre case.
    pub fn legendre() -> Self {
        Self { alpha: 0.0, beta: 0.0 }
    }

    /// Parameters whose polynomials are proportional to Chebyshev `T_n`.
    pub fn chebyshev() -> Self {
        Self { alpha: -0.5, beta: -0.5 }
    }

    /// Parameters shifted by `q` in both slots (derivative bases).
    pub fn shifted(&self, q: u32) -> Self {
        Self { alpha: self.alpha + q as f64, beta: self.beta + q as f64 }
    }
}

/// Order `ν > -1` of a Bessel function of the first kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self, SpecFunError> {
        if !(nu > -1.0) || !nu.is_finite() {
            return Err(SpecFunError::Domain {
                what: "BesselOrder",
                detail: format!("order must exceed -1, got {nu}"),
            });
        }
        Ok(Self(nu))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}
