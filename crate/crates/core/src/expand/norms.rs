//! Norms of `f - P_N f` in weighted `L²` and Jacobi-weighted Sobolev spaces.

use super::{derivative_coeffs, Basis, CoefficientSeries, ExpandError, SingularFunction, Site};
use crate::asymp::{fit_decay, peak_envelope};
use crate::numeric::Neumaier;
use crate::specfun::JacobiParams;

/// Share of the squared stored tail the extrapolated remainder may reach.
const DOMINANCE: f64 = 0.1;

/// Projection error split into the part summed from stored coefficients and
/// the extrapolated remainder beyond the stored degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionError {
    pub value: f64,
    pub stored: f64,
    pub unstored: f64,
}

/// `(Σ_{n >= start} a_n² h_n, extrapolated square of the unstored part)`.
fn tail_squares(s: &CoefficientSeries, start: usize) -> (f64, f64) {
    let len = s.len();
    let mut acc = Neumaier::default();
    for n in (start..len).rev() {
        let a = s.values[n];
        acc.add(a * a * s.basis.norm(n));
    }
    (acc.sum(), unstored_square(s))
}

fn unstored_square(s: &CoefficientSeries) -> f64 {
    let m = s.degree();
    let lo = m / 2;
    let env: Vec<(f64, f64)> = (lo..=m).map(|n| (n as f64, s.values[n].abs() * s.basis.norm(n).sqrt())).collect();
    let total: f64 = (0..=m).map(|n| s.values[n].powi(2) * s.basis.norm(n)).sum::<f64>().sqrt();
    let noise = (lo..=m)
        .map(|n| s.err_ests[n] * s.basis.norm(n).sqrt())
        .fold(0.0f64, f64::max)
        .max(1e-14 * total);
    let peak = env.iter().map(|e| e.1).fold(0.0f64, f64::max);
    if peak <= 4.0 * noise {
        return 0.0;
    }
    let lo = lo.max(10);
    if lo + 16 > m {
        return f64::INFINITY;
    }
    let peaks = peak_envelope(&env);
    let Ok(fit) = fit_decay(&peaks, 0, (lo as f64, m as f64)) else {
        return f64::INFINITY;
    };
    let q = fit.exponent;
    if !(q < -0.5) {
        return f64::INFINITY;
    }
    // envelope value at the top degree; the amplitude itself can overflow for steep fits
    let used: Vec<(f64, f64)> = peaks
        .iter()
        .filter(|p| p.0 >= lo as f64 && p.1 > 0.0)
        .map(|p| (p.0.ln(), p.1.ln()))
        .collect();
    let k = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / k;
    let my = used.iter().map(|p| p.1).sum::<f64>() / k;
    let mf = m as f64;
    let ln_top = my + q * (mf.ln() - mx);
    (2.0 * ln_top + (2.0 * q + 1.0) * (mf + 0.5).ln() - 2.0 * q * mf.ln()).exp() / (-2.0 * q - 1.0)
}

fn finish(stored2: f64, unstored2: f64) -> Result<ProjectionError, ExpandError> {
    let stored = stored2.sqrt();
    let unstored = unstored2.sqrt();
    if unstored2 > DOMINANCE * stored2 && unstored2 > 0.0 {
        return Err(ExpandError::TailDominates { stored, unstored });
    }
    Ok(ProjectionError { value: (stored2 + unstored2).sqrt(), stored, unstored })
}

/// `‖f - P_N f‖` in the basis weight, with the stored/unstored split.
pub fn l2w_projection_error_detail(s: &CoefficientSeries, n: usize) -> Result<ProjectionError, ExpandError> {
    if n >= s.degree() {
        return Err(ExpandError::LengthError(format!(
            "projection degree {n} must be below the stored degree {}",
            s.degree()
        )));
    }
    let (st, un) = tail_squares(s, n + 1);
    finish(st, un)
}

pub fn l2w_projection_error(s: &CoefficientSeries, n: usize) -> Result<f64, ExpandError> {
    Ok(l2w_projection_error_detail(s, n)?.value)
}

/// `‖f - P_N f‖_{H^{m,α,β}}`: the `q`-th derivative contributes its own
/// coefficient tail from degree `N - q + 1` on.
pub fn sobolev_projection_error_detail(
    s: &CoefficientSeries,
    n: usize,
    m: u32,
) -> Result<ProjectionError, ExpandError> {
    if s.jacobi_params().is_none() {
        return Err(ExpandError::BasisMismatch(format!(
            "Sobolev norms need a Jacobi basis, got {}",
            s.basis.label()
        )));
    }
    if n >= s.degree() {
        return Err(ExpandError::LengthError(format!(
            "projection degree {n} must be below the stored degree {}",
            s.degree()
        )));
    }
    let mut st = Neumaier::default();
    let mut un = Neumaier::default();
    for q in 0..=m {
        let d = derivative_coeffs(s, q)?;
        let (a, b) = tail_squares(&d, (n + 1).saturating_sub(q as usize));
        st.add(a);
        un.add(b);
    }
    finish(st.sum(), un.sum())
}

pub fn sobolev_projection_error(s: &CoefficientSeries, n: usize, m: u32) -> Result<f64, ExpandError> {
    Ok(sobolev_projection_error_detail(s, n, m)?.value)
}

/// Checks `f ∈ H^{m,α,β}` for the Jacobi basis `p`.
pub fn check_sobolev(f: &SingularFunction, basis: &Basis, m: u32) -> Result<(), ExpandError> {
    let p: JacobiParams = match basis {
        Basis::Jacobi(p) => *p,
        Basis::Legendre => JacobiParams::legendre(),
        _ => {
            return Err(ExpandError::BasisMismatch(format!(
                "Sobolev norms need a Jacobi basis, got {}",
                basis.label()
            )))
        }
    };
    let mf = m as f64;
    for (site, w, names) in [
        (Site::RightEndpoint, p.alpha(), ("alpha", "gamma")),
        (Site::LeftEndpoint, p.beta(), ("beta", "delta")),
    ] {
        let Some((g, mu)) = f.local_behaviour(site) else { continue };
        if mu == 0 && g >= 0.0 && g.fract() == 0.0 {
            continue;
        }
        if !(w + 2.0 * g > mf - 1.0) {
            return Err(ExpandError::NotInSobolev(format!(
                "{0}+2{1} > m-1 fails with {0}={w}, {1}={g}, m={m}",
                names.0, names.1
            )));
        }
    }
    for fac in f.factors() {
        if let Site::Interior(z) = fac.site {
            let s = fac.exponent;
            let smooth = fac.log_power == 0 && s >= 0.0 && s.fract() == 0.0 && (s as u64) % 2 == 0;
            if !smooth && !(s > mf - 0.5) {
                return Err(ExpandError::NotInSobolev(format!(
                    "s > m-1/2 fails at z0={z} with s={s}, m={m}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymp::fit_decay;
    use crate::expand::{chebyshev_coeffs, jacobi_coeffs, SingularFactor, SmoothTerm};

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    fn p0_plus_p3(len: usize) -> CoefficientSeries {
        let mut v = vec![0.0; len];
        v[0] = 1.0;
        v[3] = 1.0;
        CoefficientSeries::new(Basis::Jacobi(jp(0.0, 0.0)), v, vec![1e-16; len]).unwrap()
    }

    #[test]
    fn finite_expansions() {
        let s = p0_plus_p3(40);
        assert_eq!(l2w_projection_error(&s, 3).unwrap(), 0.0);
        let e = l2w_projection_error(&s, 2).unwrap();
        assert!((e - (2.0f64 / 7.0).sqrt()).abs() < 1e-15);
        for m in 0..3 {
            assert_eq!(sobolev_projection_error(&s, 5, m).unwrap(), 0.0);
        }
    }

    #[test]
    fn sobolev_order_zero_is_l2w() {
        let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, 1.6, 2).unwrap()]).unwrap();
        let s = jacobi_coeffs(&f, jp(0.0, 0.0), 400, 1e-13).unwrap();
        for n in [10, 50, 99] {
            let a = l2w_projection_error_detail(&s, n).unwrap();
            let b = sobolev_projection_error_detail(&s, n, 0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sobolev_of_quadratic_counts_derivative_terms() {
        // f = P_2, N = 1: f' = 3x = (3/2) P_1^{(1,1)} and σ_1^{(1,1)} = 16/15
        let mut v = vec![0.0; 30];
        v[2] = 1.0;
        let s = CoefficientSeries::new(Basis::Legendre, v, vec![0.0; 30]).unwrap();
        let e = sobolev_projection_error(&s, 1, 1).unwrap();
        let want = (2.0 / 5.0 + 1.5f64.powi(2) * 16.0 / 15.0).sqrt();
        assert!((e - want).abs() < 1e-14, "{e} {want}");
        // at N = 2 the derivative tail starts past degree 1, leaving nothing
        assert_eq!(sobolev_projection_error(&s, 2, 1).unwrap(), 0.0);
    }

    #[test]
    fn error_is_non_increasing() {
        let f = SingularFunction::new(
            vec![],
            vec![
                SingularFactor::new(Site::RightEndpoint, 0.6, 0).unwrap(),
                SingularFactor::new(Site::LeftEndpoint, 0.4, 0).unwrap(),
            ],
        )
        .unwrap()
        .times_log_one_minus_x2(1);
        let s = chebyshev_coeffs(&f, 800, 1e-13).unwrap();
        let mut prev = f64::INFINITY;
        for n in (10..=200).step_by(10) {
            let e = l2w_projection_error(&s, n).unwrap();
            assert!(e <= prev);
            prev = e;
        }
    }

    #[test]
    fn tail_dominance_is_reported() {
        // slowly decaying synthetic series whose unstored part is large
        let v: Vec<f64> = (0..200).map(|n| 1.0 / (n as f64 + 1.0).powf(0.8)).collect();
        let s = CoefficientSeries::new(Basis::Chebyshev, v, vec![0.0; 200]).unwrap();
        assert!(matches!(l2w_projection_error(&s, 150), Err(ExpandError::TailDominates { .. })));
        assert!(matches!(l2w_projection_error(&s, 199), Err(ExpandError::LengthError(_))));
    }

    #[test]
    fn sobolev_rate_for_endpoint_singularity() {
        let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, 1.6, 2).unwrap()]).unwrap();
        let s = jacobi_coeffs(&f, jp(0.0, 0.0), 1200, 1e-13).unwrap();
        let pts: Vec<(f64, f64)> = (100..=300)
            .step_by(20)
            .map(|n| (n as f64, sobolev_projection_error(&s, n, 1).unwrap()))
            .collect();
        let r = fit_decay(&pts, 2, (100.0, 300.0)).unwrap();
        assert!((r.exponent + 3.2).abs() < 0.15, "{}", r.exponent);
    }

    #[test]
    fn membership_checks() {
        let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, 1.6, 2).unwrap()]).unwrap();
        assert!(check_sobolev(&f, &Basis::Legendre, 1).is_ok());
        assert!(check_sobolev(&f, &Basis::Legendre, 4).is_ok());
        assert!(matches!(check_sobolev(&f, &Basis::Legendre, 5), Err(ExpandError::NotInSobolev(_))));
        let g = SingularFunction::new(vec![SmoothTerm::Cos], vec![SingularFactor::new(Site::Interior(0.5), 1.0, 1).unwrap()]).unwrap();
        assert!(check_sobolev(&g, &Basis::Legendre, 1).is_ok());
        assert!(matches!(check_sobolev(&g, &Basis::Legendre, 2), Err(ExpandError::NotInSobolev(_))));
        assert!(matches!(check_sobolev(&g, &Basis::Chebyshev, 0), Err(ExpandError::BasisMismatch(_))));
        let h = SingularFunction::new(vec![], vec![SingularFactor::new(Site::Interior(0.5), 2.0, 0).unwrap()]).unwrap();
        assert!(check_sobolev(&h, &Basis::Legendre, 5).is_ok());
    }
}
