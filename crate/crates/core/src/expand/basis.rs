//! Orthogonal families and coefficient series.

use std::f64::consts::PI;

use super::ExpandError;
use crate::specfun::{gegenbauer_norm, jacobi_norm, JacobiParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Jacobi(JacobiParams),
    Gegenbauer(f64),
    Legendre,
    Chebyshev,
}

impl Basis {
    pub fn gegenbauer(lambda: f64) -> Result<Self, ExpandError> {
        if !(lambda > -0.5) || lambda == 0.0 || !lambda.is_finite() {
            return Err(ExpandError::InvalidBasis(format!(
                "Gegenbauer parameter must satisfy lambda > -1/2, lambda != 0; got {lambda}"
            )));
        }
        Ok(Basis::Gegenbauer(lambda))
    }

    /// Exponents `(α, β)` of the orthogonality weight `(1-x)^α (1+x)^β`.
    pub fn weight_exponents(&self) -> (f64, f64) {
        match *self {
            Basis::Jacobi(p) => (p.alpha(), p.beta()),
            Basis::Gegenbauer(l) => (l - 0.5, l - 0.5),
            Basis::Legendre => (0.0, 0.0),
            Basis::Chebyshev => (-0.5, -0.5),
        }
    }

    /// Squared norm of the n-th basis function under the weight.
    pub fn norm(&self, n: usize) -> f64 {
        match *self {
            Basis::Jacobi(p) => jacobi_norm(n, p),
            Basis::Gegenbauer(l) => gegenbauer_norm(n, l).expect("lambda validated"),
            Basis::Legendre => 2.0 / (2 * n + 1) as f64,
            Basis::Chebyshev => {
                if n == 0 {
                    PI
                } else {
                    0.5 * PI
                }
            }
        }
    }

    /// Short label used in output files.
    pub fn label(&self) -> String {
        match *self {
            Basis::Jacobi(p) => format!("jacobi:{},{}", p.alpha(), p.beta()),
            Basis::Gegenbauer(l) => format!("gegenbauer:{l}"),
            Basis::Legendre => "legendre".into(),
            Basis::Chebyshev => "chebyshev".into(),
        }
    }
}

/// Coefficients `a_0..a_N` with quadrature error estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub basis: Basis,
    pub values: Vec<f64>,
    pub err_ests: Vec<f64>,
}

impl CoefficientSeries {
    pub fn new(basis: Basis, values: Vec<f64>, err_ests: Vec<f64>) -> Result<Self, ExpandError> {
        if values.is_empty() || values.len() != err_ests.len() {
            return Err(ExpandError::LengthError(format!(
                "{} values and {} error estimates",
                values.len(),
                err_ests.len()
            )));
        }
        Ok(Self { basis, values, err_ests })
    }

    /// Highest stored degree.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn jacobi_params(&self) -> Option<JacobiParams> {
        match self.basis {
            Basis::Jacobi(p) => Some(p),
            Basis::Legendre => Some(JacobiParams::legendre()),
            _ => None,
        }
    }
}
