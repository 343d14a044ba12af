//! Hilb-type asymptotics: `P_n^{(α,β)}(cos θ)` from `J_α(Ñθ)`,
//! with `Ñ = n + (α+β+1)/2`.

use std::f64::consts::{LN_2, PI};

use super::{bessel_j_unchecked, ln_gamma_pos, JacobiParams, SpecFunError};

fn check_theta(theta: f64, what: &'static str) -> Result<(), SpecFunError> {
    if !(theta > 0.0 && theta < PI) {
        return Err(SpecFunError::Domain {
            what,
            detail: format!("theta must lie in (0, pi), got {theta}"),
        });
    }
    Ok(())
}

/// `θ^{-1/2} sin^{α+1/2}(θ/2) cos^{β+1/2}(θ/2)`.
pub fn hilb_weight(p: JacobiParams, theta: f64) -> Result<f64, SpecFunError> {
    check_theta(theta, "hilb_weight")?;
    let (s, c) = (0.5 * theta).sin_cos();
    Ok((-0.5 * theta.ln() + (p.alpha() + 0.5) * s.ln() + (p.beta() + 0.5) * c.ln()).exp())
}

/// Main term of the Hilb formula solved for `P_n^{(α,β)}(cos θ)`.
pub fn hilb_main_term(n: usize, p: JacobiParams, theta: f64) -> Result<f64, SpecFunError> {
    check_theta(theta, "hilb_main_term")?;
    if n == 0 {
        return Err(SpecFunError::Domain {
            what: "hilb_main_term",
            detail: "degree must be positive".into(),
        });
    }
    let (al, be) = (p.alpha(), p.beta());
    let nf = n as f64;
    let nt = nf + 0.5 * (al + be + 1.0);
    let (s, c) = (0.5 * theta).sin_cos();
    let ln_pref = ln_gamma_pos(nf + al + 1.0) - ln_gamma_pos(nf + 1.0) - al * nt.ln() - 0.5 * LN_2
        + 0.5 * theta.ln()
        - (al + 0.5) * s.ln()
        - (be + 0.5) * c.ln();
    Ok(ln_pref.exp() * bessel_j_unchecked(al, nt * theta))
}
