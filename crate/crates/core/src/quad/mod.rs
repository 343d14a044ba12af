//! Quadrature: Gauss rules, graded composite integration of singular
//! integrands, and oscillation-resolving integration of Bessel transforms.

mod bessel_transform;
mod eig;
mod gauss;
mod mesh;
mod singular;

pub use bessel_transform::{
    bessel_moment_tail, bessel_transform, bessel_transform_sweep, bessel_transform_with,
    LogSite, OscIntegralSpec, OscOptions,
};
pub use gauss::{gauss_jacobi, gauss_legendre, QuadratureRule, RuleKind, MAX_RULE_SIZE};
pub use mesh::GradedMesh;
pub use singular::{
    graded_mesh, integrate_batch, integrate_singular, integrate_singular_with, BatchIntegral,
    IntegrationOptions, KernelBatch,
};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("rule size {n} outside 1..={max}")]
    Size { n: usize, max: usize },
    #[error("interval [{a}, {b}] is not inside [-1, 1]")]
    Interval { a: f64, b: f64 },
    #[error("tolerance {0} is below 1e-14")]
    Tolerance(f64),
    #[error("invalid oscillatory integral: {0}")]
    InvalidSpec(String),
    #[error("no convergence for integral {index}: value {value:e}, error estimate {err_est:e} > tolerance {tol:e}")]
    NoConvergence { index: usize, value: f64, err_est: f64, tol: f64 },
}
