//! Rescalings between bases and coefficients of derivatives.

use std::f64::consts::{LN_2, PI};

use super::{Basis, CoefficientSeries, ExpandError};
use crate::specfun::{gegenbauer_jacobi_factor, jacobi_ln_norm, ln_gamma_pos};

fn symmetric_alpha(s: &CoefficientSeries) -> Option<f64> {
    match s.jacobi_params() {
        Some(p) if p.alpha() == p.beta() => Some(p.alpha()),
        _ => None,
    }
}

/// Gegenbauer coefficients with `λ = α + ½` from a symmetric Jacobi series.
pub fn convert_jacobi_to_gegenbauer(s: &CoefficientSeries) -> Result<CoefficientSeries, ExpandError> {
    let alpha = symmetric_alpha(s).ok_or_else(|| {
        ExpandError::BasisMismatch(format!("need symmetric Jacobi basis, got {}", s.basis.label()))
    })?;
    let lambda = alpha + 0.5;
    let basis = Basis::gegenbauer(lambda)
        .map_err(|_| ExpandError::BasisMismatch(format!("lambda = {lambda} is not admissible")))?;
    let mut values = Vec::with_capacity(s.len());
    let mut errs = Vec::with_capacity(s.len());
    for (n, (v, e)) in s.values.iter().zip(&s.err_ests).enumerate() {
        // C_n = F_n P_n  implies  a_n(λ) = a_n(α, α) / F_n
        let (ln, sign) = gegenbauer_jacobi_factor(n, lambda);
        let k = (-ln).exp();
        values.push(sign * k * v);
        errs.push(k * e);
    }
    CoefficientSeries::new(basis, values, errs)
}

/// Chebyshev coefficients from a Jacobi(-½, -½) series.
pub fn convert_jacobi_to_chebyshev(s: &CoefficientSeries) -> Result<CoefficientSeries, ExpandError> {
    if symmetric_alpha(s) != Some(-0.5) {
        return Err(ExpandError::BasisMismatch(format!(
            "need Jacobi(-1/2,-1/2), got {}",
            s.basis.label()
        )));
    }
    let mut values = Vec::with_capacity(s.len());
    let mut errs = Vec::with_capacity(s.len());
    for (n, (v, e)) in s.values.iter().zip(&s.err_ests).enumerate() {
        let k = if n == 0 {
            1.0
        } else {
            let nf = n as f64;
            (ln_gamma_pos(nf + 0.5) - 0.5 * PI.ln() - ln_gamma_pos(nf + 1.0)).exp()
        };
        values.push(k * v);
        errs.push(k * e);
    }
    CoefficientSeries::new(Basis::Chebyshev, values, errs)
}

/// Coefficients of `f^{(q)}` in the Jacobi(α+q, β+q) basis, degrees `0..=N-q`.
pub fn derivative_coeffs(s: &CoefficientSeries, q: u32) -> Result<CoefficientSeries, ExpandError> {
    let p = s.jacobi_params().ok_or_else(|| {
        ExpandError::BasisMismatch(format!("need a Jacobi basis, got {}", s.basis.label()))
    })?;
    if q == 0 {
        return Ok(s.clone());
    }
    let qn = q as usize;
    if s.len() <= qn {
        return Err(ExpandError::LengthError(format!(
            "degree {} series has no derivative of order {q}",
            s.degree()
        )));
    }
    let ps = p.shifted(q);
    let out_len = s.len() - qn;
    let mut values = Vec::with_capacity(out_len);
    let mut errs = Vec::with_capacity(out_len);
    for n in 0..out_len {
        let ln = jacobi_ln_norm(n + qn, p) - jacobi_ln_norm(n, ps)
            + q as f64 * LN_2
            + ln_gamma_pos((n + qn) as f64 + 1.0)
            - ln_gamma_pos(n as f64 + 1.0);
        let k = ln.exp();
        values.push(k * s.values[n + qn]);
        errs.push(k * s.err_ests[n + qn]);
    }
    CoefficientSeries::new(Basis::Jacobi(ps), values, errs)
}
