//! Bessel functions of the first kind `J_ν(x)` for real `ν > -1`, `x >= 0`.
//!
//! Three evaluation paths:
//! * ascending power series for `x <= 2` or `x^2 <= 2(ν+1)`, where the terms
//!   decrease from the first one and cancellation is mild;
//! * Hankel's asymptotic expansion for `x >= 25` when its terms fall below
//!   `1e-15` before they start to grow;
//! * Miller's backward recurrence everywhere else.

use std::f64::consts::{LN_2, PI};

use super::{ln_gamma_pos, ln_gamma_signed, BesselOrder, SpecFunError};
use crate::numeric::Neumaier;

const HANKEL_MIN_X: f64 = 25.0;
const RESCALE: f64 = 1e250;

/// `J_ν(x)`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "bessel_j",
            detail: format!("argument must be finite and non-negative, got {x}"),
        });
    }
    Ok(bessel_j_unchecked(order.value(), x))
}

/// `J_ν(x)` without validation; requires `ν > -1` and `x >= 0`.
pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x <= 2.0 || x * x <= 2.0 * (nu + 1.0) {
        return series(nu, x);
    }
    if x >= HANKEL_MIN_X {
        if let Some(v) = hankel(nu, x) {
            return v;
        }
    }
    miller(nu, x)
}

fn series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut acc = Neumaier::default();
    acc.add(1.0);
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        acc.add(term);
        if term.abs() < 1e-17 * acc.sum().abs() || term == 0.0 {
            break;
        }
    }
    let ln_pref = nu * (0.5 * x).ln() - ln_gamma_pos(nu + 1.0);
    ln_pref.exp() * acc.sum()
}

fn hankel(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut k = 0u32;
    loop {
        k += 1;
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (kf * 8.0 * x);
        if next == 0.0 {
            break;
        }
        if next.abs() > term.abs() {
            if term.abs() > 1e-15 {
                return None;
            }
            break;
        }
        term = next;
        // signs alternate within P and within Q
        let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += s * term;
        } else {
            q += s * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
        if k > 200 {
            return None;
        }
    }
    let phi = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi))
}

fn miller(nu: f64, x: f64) -> f64 {
    let n_int = nu.floor();
    let nu0 = nu - n_int;
    let target = if n_int < 0.0 { 0 } else { n_int as usize };
    let big = x.max(nu);
    let mut m = big.ceil() as usize + 40 + 4 * big.sqrt().ceil() as usize;
    if m % 2 == 1 {
        m += 1;
    }

    // c_j = (ν0 + 2j) Γ(ν0 + j) / j! for j >= 1, downward from j = m/2
    let jm = (m / 2) as f64;
    let mut c = (nu0 + 2.0 * jm) * (ln_gamma_pos(nu0 + jm) - ln_gamma_pos(jm + 1.0)).exp();

    let mut f_next = 0.0;
    let mut f = 1e-30_f64;
    let mut norm = Neumaier::default();
    norm.add(c * f);
    let mut f_target = if m == target { f } else { 0.0 };
    let mut f1 = 0.0;
    let mut k = m;
    while k > 0 {
        let f_prev = 2.0 * (nu0 + k as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        k -= 1;
        if k == 1 {
            f1 = f;
        }
        if k == target {
            f_target = f;
        }
        if k % 2 == 0 {
            let j = (k / 2) as f64;
            if k == 0 {
                c = (ln_gamma_pos(nu0 + 1.0)).exp();
            } else {
                // c_j from c_{j+1}
                c *= (nu0 + 2.0 * j) / (nu0 + 2.0 * j + 2.0) * (j + 1.0) / (nu0 + j);
            }
            norm.add(c * f);
        }
        if f.abs() > RESCALE {
            f /= RESCALE;
            f_next /= RESCALE;
            f_target /= RESCALE;
            f1 /= RESCALE;
            norm.scale(1.0 / RESCALE);
        }
    }
    let scale = (nu0 * (0.5 * x).ln()).exp() / norm.sum();
    if n_int < 0.0 {
        let j0 = f * scale;
        let j1 = f1 * scale;
        return 2.0 * nu0 / x * j0 - j1;
    }
    f_target * scale
}

/// `∫_0^∞ u^α J_ν(u) du = 2^α Γ((α+ν+1)/2) / Γ((ν-α+1)/2)`, valid for
/// `α + ν > -1` and `α < 1/2`.
pub fn bessel_moment_closed_form(alpha: f64, order: BesselOrder) -> Result<f64, SpecFunError> {
    let nu = order.value();
    if !(alpha + nu > -1.0) || !(alpha < 0.5) {
        return Err(SpecFunError::Domain {
            what: "bessel_moment_closed_form",
            detail: format!("need alpha + nu > -1 and alpha < 1/2, got alpha={alpha}, nu={nu}"),
        });
    }
    let den_arg = 0.5 * (nu - alpha + 1.0);
    if den_arg <= 0.0 && den_arg == den_arg.round() {
        return Ok(0.0);
    }
    let (ld, sd) = ln_gamma_signed(den_arg)?;
    let ln = alpha * LN_2 + ln_gamma_pos(0.5 * (alpha + nu + 1.0)) - ld;
    Ok(sd * ln.exp())
}
