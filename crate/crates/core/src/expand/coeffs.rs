//! Expansion coefficients by graded quadrature in `x`, all degrees at once.

use super::cheb_algebra::smooth_chebyshev;
use super::{Basis, CoefficientSeries, ExpandError, SingularFunction, Site};
use crate::quad::{integrate_batch, IntegrationOptions, KernelBatch};
use crate::specfun::{GegenbauerRecurrence, JacobiParams, JacobiRecurrence};

/// Quadrature settings for coefficient computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffOptions {
    /// Panels span at most `theta_factor / (N + 1)` in `θ = arccos x`.
    pub theta_factor: f64,
    pub integration: IntegrationOptions,
}

impl Default for CoeffOptions {
    fn default() -> Self {
        Self { theta_factor: 8.0, integration: IntegrationOptions::default() }
    }
}

struct JacobiKernels(JacobiRecurrence, usize);

impl KernelBatch for JacobiKernels {
    fn len(&self) -> usize {
        self.1
    }
    fn fill(&self, x: f64, out: &mut [f64]) {
        self.0.fill(x, out);
    }
}

struct GegenbauerKernels(GegenbauerRecurrence, usize);

impl KernelBatch for GegenbauerKernels {
    fn len(&self) -> usize {
        self.1
    }
    fn fill(&self, x: f64, out: &mut [f64]) {
        self.0.fill(x, out);
    }
}

struct ChebyshevKernels(usize);

impl KernelBatch for ChebyshevKernels {
    fn len(&self) -> usize {
        self.0
    }
    fn fill(&self, x: f64, out: &mut [f64]) {
        out[0] = 1.0;
        if out.len() > 1 {
            out[1] = x;
        }
        for k in 2..out.len() {
            out[k] = 2.0 * x * out[k - 1] - out[k - 2];
        }
    }
}

/// Checks that `f` lies in `L²_w` and that `f·w` is integrable for the basis weight.
pub fn check_l2w(f: &SingularFunction, basis: &Basis) -> Result<(), ExpandError> {
    let (a, b) = basis.weight_exponents();
    for (site, w, name) in [(Site::RightEndpoint, a, ("alpha", "gamma")), (Site::LeftEndpoint, b, ("beta", "delta"))] {
        let g = f.factor_at(site).map(|g| g.exponent).unwrap_or(0.0);
        if !(w + g > -1.0 && w + 2.0 * g > -1.0) {
            return Err(ExpandError::NotInL2w(format!(
                "min{{{0}+{1}, {0}+2{1}}} > -1 fails with {0}={w}, {1}={g}",
                name.0, name.1
            )));
        }
    }
    for g in f.factors() {
        if let Site::Interior(z) = g.site {
            if !(g.exponent > -0.5) {
                return Err(ExpandError::NotInL2w(format!(
                    "s > -1/2 fails at z0={z} with s={}",
                    g.exponent
                )));
            }
        }
    }
    Ok(())
}

/// Coefficients `a_0..a_N` of `f` in `basis`; each has absolute error estimate `<= tol`.
pub fn coefficients(
    f: &SingularFunction,
    basis: Basis,
    n_max: usize,
    tol: f64,
) -> Result<CoefficientSeries, ExpandError> {
    coefficients_with(f, basis, n_max, tol, &CoeffOptions::default())
}

pub fn coefficients_with(
    f: &SingularFunction,
    basis: Basis,
    n_max: usize,
    tol: f64,
    opts: &CoeffOptions,
) -> Result<CoefficientSeries, ExpandError> {
    if let Basis::Gegenbauer(l) = basis {
        Basis::gegenbauer(l)?;
    }
    if !(tol >= 1e-14) {
        return Err(ExpandError::NoConvergence(crate::quad::QuadError::Tolerance(tol)));
    }
    check_l2w(f, &basis)?;
    if basis == Basis::Chebyshev {
        if let Some(values) = smooth_chebyshev(f, n_max) {
            let errs = values.iter().map(|v| 4.0 * f64::EPSILON * v.abs()).collect();
            return CoefficientSeries::new(basis, values, errs);
        }
    }
    let len = n_max + 1;
    let (a, b) = basis.weight_exponents();
    let fw = f.with_weight(a, b);
    let norms: Vec<f64> = (0..len).map(|n| basis.norm(n)).collect();
    let tols: Vec<f64> = norms.iter().map(|s| tol * s).collect();
    let mut iopts = opts.integration;
    iopts.max_theta_span = Some(opts.theta_factor / len as f64);
    let r = match basis {
        Basis::Jacobi(p) => {
            integrate_batch(&fw, -1.0, 1.0, &JacobiKernels(JacobiRecurrence::new(p, len), len), &tols, &iopts)
        }
        Basis::Legendre => integrate_batch(
            &fw,
            -1.0,
            1.0,
            &JacobiKernels(JacobiRecurrence::new(JacobiParams::legendre(), len), len),
            &tols,
            &iopts,
        ),
        Basis::Gegenbauer(l) => {
            let rec = GegenbauerRecurrence::new(l, len).expect("lambda validated");
            integrate_batch(&fw, -1.0, 1.0, &GegenbauerKernels(rec, len), &tols, &iopts)
        }
        Basis::Chebyshev => integrate_batch(&fw, -1.0, 1.0, &ChebyshevKernels(len), &tols, &iopts),
    }?;
    let values = r.values.iter().zip(&norms).map(|(v, s)| v / s).collect();
    let errs = r.err_ests.iter().zip(&norms).map(|(e, s)| e / s).collect();
    CoefficientSeries::new(basis, values, errs)
}

pub fn jacobi_coeffs(
    f: &SingularFunction,
    p: JacobiParams,
    n_max: usize,
    tol: f64,
) -> Result<CoefficientSeries, ExpandError> {
    coefficients(f, Basis::Jacobi(p), n_max, tol)
}

pub fn gegenbauer_coeffs(
    f: &SingularFunction,
    lambda: f64,
    n_max: usize,
    tol: f64,
) -> Result<CoefficientSeries, ExpandError> {
    coefficients(f, Basis::gegenbauer(lambda)?, n_max, tol)
}

pub fn chebyshev_coeffs(
    f: &SingularFunction,
    n_max: usize,
    tol: f64,
) -> Result<CoefficientSeries, ExpandError> {
    coefficients(f, Basis::Chebyshev, n_max, tol)
}

pub fn legendre_coeffs(
    f: &SingularFunction,
    n_max: usize,
    tol: f64,
) -> Result<CoefficientSeries, ExpandError> {
    coefficients(f, Basis::Legendre, n_max, tol)
}
