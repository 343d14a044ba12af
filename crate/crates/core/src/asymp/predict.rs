//! Predicted `(exponent, log power)` envelopes for coefficients, projection
//! errors and Bessel transforms.

use std::fmt;

use super::AsympError;
use crate::expand::{Basis, SingularFunction, Site};
use crate::quad::{LogSite, OscIntegralSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Applicability {
    CoefficientDecay,
    ProjectionL2,
    ProjectionSobolev(u32),
    BesselTransform,
}

/// Result that the prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Thm1,
    Thm2,
    Thm3,
    Rem3,
    Cor1,
    Cor2,
    Cor3,
    Cor6,
    Thm4,
    Cor4,
    Thm5,
    Cor5,
    Rem5,
    Lem3,
    Lem5,
    Lem6,
    Lem7,
    Lem8,
    Lem9,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePrediction {
    /// Power of `n` (or `ω`); `-∞` for super-algebraic decay.
    pub exponent: f64,
    pub log_power: u32,
    pub applicability: Applicability,
    pub source: Source,
    /// Two branches had equal exponents and different log powers.
    pub log_tie: bool,
}

impl RatePrediction {
    pub fn is_super_algebraic(&self) -> bool {
        self.exponent == f64::NEG_INFINITY
    }

    /// `n^p ln^m n`.
    pub fn envelope(&self, n: f64) -> f64 {
        if self.is_super_algebraic() {
            return 0.0;
        }
        n.powf(self.exponent) * n.ln().powi(self.log_power as i32)
    }
}

const TIE_EPS: f64 = 1e-12;

/// Slower of two `(exponent, log power)` envelopes; the flag reports an
/// exponent tie decided by the log power.
fn slowest(a: (f64, u32), b: (f64, u32)) -> ((f64, u32), bool) {
    if (a.0 - b.0).abs() <= TIE_EPS {
        ((a.0.max(b.0), a.1.max(b.1)), a.1 != b.1)
    } else if a.0 > b.0 {
        (a, false)
    } else {
        (b, false)
    }
}

fn is_nonneg_int(x: f64) -> bool {
    x >= 0.0 && x.fract() == 0.0
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Jacobi,
    Gegenbauer(f64),
    Chebyshev,
}

fn family(basis: &Basis) -> Family {
    match basis {
        Basis::Jacobi(_) | Basis::Legendre => Family::Jacobi,
        Basis::Gegenbauer(l) => Family::Gegenbauer(*l),
        Basis::Chebyshev => Family::Chebyshev,
    }
}

/// Names an endpoint hypothesis `w + g > bound` in the basis' own parameters.
fn endpoint_condition(fam: Family, right: bool, bound: f64, twice: bool) -> String {
    let g = if right { "gamma" } else { "delta" };
    let g = if twice { format!("2{g}") } else { g.to_string() };
    match fam {
        Family::Jacobi => {
            let w = if right { "alpha" } else { "beta" };
            format!("{w}+{g} > {bound}")
        }
        Family::Gegenbauer(_) => format!("lambda+{g} > {}", bound + 0.5),
        Family::Chebyshev => format!("{g} > {}", bound + 0.5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum SiteKind {
    Right,
    Left,
    Interior { nonpositive: bool },
}

/// Per-site rates in Jacobi normalization.
fn site_rates(
    f: &SingularFunction,
    basis: &Basis,
    m: Option<u32>,
) -> Result<Vec<((f64, u32), SiteKind)>, AsympError> {
    let (a, b) = basis.weight_exponents();
    let fam = family(basis);
    let mut sites = f.sites();
    sites.sort_by(|x, y| x.position().partial_cmp(&y.position()).expect("finite sites"));
    let mut out = Vec::new();
    for site in sites {
        let Some((e, mu)) = f.local_behaviour(site) else { continue };
        match site {
            Site::RightEndpoint | Site::LeftEndpoint => {
                let right = matches!(site, Site::RightEndpoint);
                let w = if right { a } else { b };
                let integer = is_nonneg_int(e);
                if integer && mu == 0 {
                    continue;
                }
                let bound = m.map_or(-1.0, |m| m as f64 - 1.0);
                if !(w + e > bound) {
                    return Err(AsympError::HypothesisViolated(endpoint_condition(fam, right, bound, false)));
                }
                if m.is_some() && !(w + 2.0 * e > bound) {
                    return Err(AsympError::HypothesisViolated(endpoint_condition(fam, right, bound, true)));
                }
                let lp = if integer { mu - 1 } else { mu };
                out.push(((-w - 2.0 * e - 1.0, lp), if right { SiteKind::Right } else { SiteKind::Left }));
            }
            Site::Interior(_) => {
                if mu == 0 && is_nonneg_int(e) && e % 2.0 == 0.0 {
                    continue;
                }
                if let Some(m) = m {
                    if !(e > m as f64 - 0.5) {
                        return Err(AsympError::HypothesisViolated(format!("s > {}", m as f64 - 0.5)));
                    }
                    if !(a.min(b) >= -0.5) {
                        return Err(AsympError::HypothesisViolated(match fam {
                            Family::Gegenbauer(_) => "lambda >= 0".into(),
                            _ => "min{alpha,beta} >= -1/2".into(),
                        }));
                    }
                } else if !(e > -1.0) {
                    return Err(AsympError::HypothesisViolated("s > -1".into()));
                }
                let main = (-e - 0.5, mu);
                if e <= 0.0 {
                    let (r, _) = slowest(main, (-(1.0 + a.min(b)), 0));
                    out.push((r, SiteKind::Interior { nonpositive: true }));
                } else {
                    out.push((main, SiteKind::Interior { nonpositive: false }));
                }
            }
        }
    }
    Ok(out)
}

/// Exponent offset from the Jacobi normalization to the basis' own coefficients.
fn coefficient_shift(fam: Family) -> f64 {
    match fam {
        Family::Jacobi => 0.0,
        Family::Gegenbauer(l) => 0.5 - l,
        Family::Chebyshev => -0.5,
    }
}

fn combine(rates: &[((f64, u32), SiteKind)]) -> ((f64, u32), bool) {
    let mut acc = rates[0].0;
    let mut tie = false;
    for r in &rates[1..] {
        let (n, t) = slowest(acc, r.0);
        acc = n;
        tie |= t;
    }
    (acc, tie)
}

fn super_algebraic(applicability: Applicability) -> RatePrediction {
    RatePrediction {
        exponent: f64::NEG_INFINITY,
        log_power: 0,
        applicability,
        source: Source::Rem5,
        log_tie: false,
    }
}

/// Decay envelope of the expansion coefficients of `f` in `basis`.
pub fn predict_coeff_decay(f: &SingularFunction, basis: &Basis) -> Result<RatePrediction, AsympError> {
    let app = Applicability::CoefficientDecay;
    let rates = site_rates(f, basis, None)?;
    if rates.is_empty() {
        return Ok(super_algebraic(app));
    }
    let fam = family(basis);
    let ((e, lp), tie) = combine(&rates);
    let interior = rates.iter().filter(|r| matches!(r.1, SiteKind::Interior { .. })).count();
    let source = if rates.len() > 1 && interior > 0 {
        Source::Cor6
    } else if interior == 1 {
        match (rates[0].1, fam) {
            (SiteKind::Interior { nonpositive: true }, _) => Source::Rem3,
            (_, Family::Jacobi) => Source::Thm3,
            _ => Source::Cor3,
        }
    } else {
        match fam {
            Family::Jacobi if rates.len() == 2 => Source::Cor1,
            Family::Jacobi if rates[0].1 == SiteKind::Right => Source::Thm1,
            Family::Jacobi => Source::Thm2,
            _ => Source::Cor2,
        }
    };
    Ok(RatePrediction { exponent: e + coefficient_shift(fam), log_power: lp, applicability: app, source, log_tie: tie })
}

/// Envelope of `‖f - P_N f‖` in `L²_w` (`m = 0`) or `H^{m,α,β}`.
pub fn predict_projection_rate(f: &SingularFunction, basis: &Basis, m: u32) -> Result<RatePrediction, AsympError> {
    let app = if m == 0 { Applicability::ProjectionL2 } else { Applicability::ProjectionSobolev(m) };
    let rates = site_rates(f, basis, Some(m))?;
    if rates.is_empty() {
        return Ok(super_algebraic(app));
    }
    let ((e, lp), tie) = combine(&rates);
    let jac = matches!(family(basis), Family::Jacobi);
    let source = match (jac, m) {
        (true, 0) => Source::Thm4,
        (true, _) => Source::Thm5,
        (false, 0) => Source::Cor4,
        (false, _) => Source::Cor5,
    };
    Ok(RatePrediction { exponent: e + m as f64, log_power: lp, applicability: app, source, log_tie: tie })
}

/// ω-envelope of the Bessel transform described by `spec`.
pub fn predict_bessel_rate(spec: &OscIntegralSpec) -> Result<RatePrediction, AsympError> {
    spec.validate().map_err(|e| AsympError::HypothesisViolated(e.to_string()))?;
    let (a, b, mu) = (spec.alpha, spec.beta, spec.mu);
    let full = spec.t == spec.b;
    let unit_b = spec.b == 1.0 && mu >= 1;
    let (first, second, source) = match spec.log_site {
        LogSite::AtZero => {
            let near = (-(a + 1.0), mu);
            if full {
                let shift = if unit_b { mu as f64 } else { 0.0 };
                (near, (-(b + 1.5 + shift), 0), if mu == 0 { Source::Lem6 } else { Source::Lem7 })
            } else if b == 0.0 {
                (near, (-1.5, 0), Source::Lem3)
            } else {
                let e = if unit_b { 1.5 } else { (b + 1.5).min(1.5) };
                (near, (-e, 0), Source::Lem5)
            }
        }
        LogSite::AtB => {
            let shift = if unit_b { mu as f64 } else { 0.0 };
            let near = (-(a + shift + 1.0), 0);
            if full {
                (near, (-(b + 1.5), mu), if mu == 0 { Source::Lem6 } else { Source::Lem9 })
            } else {
                (near, (-(b + 1.5).min(1.5), mu), Source::Lem8)
            }
        }
    };
    let ((e, lp), tie) = slowest(first, second);
    Ok(RatePrediction {
        exponent: e,
        log_power: lp,
        applicability: Applicability::BesselTransform,
        source,
        log_tie: tie,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::{SingularFactor, SmoothTerm};
    use crate::specfun::{BesselOrder, JacobiParams};
    use proptest::prelude::*;

    fn jac(a: f64, b: f64) -> Basis {
        Basis::Jacobi(JacobiParams::new(a, b).unwrap())
    }

    fn func(factors: &[(Site, f64, u32)]) -> SingularFunction {
        SingularFunction::new(
            vec![SmoothTerm::Cos],
            factors.iter().map(|&(s, e, m)| SingularFactor::new(s, e, m).unwrap()).collect(),
        )
        .unwrap()
    }

    fn spec(a: f64, b: f64, mu: u32, site: LogSite, t: f64) -> OscIntegralSpec {
        OscIntegralSpec {
            alpha: a,
            beta: b,
            mu,
            nu: BesselOrder::new(0.0).unwrap(),
            b: 0.5,
            log_site: site,
            psi: SmoothTerm::Cos,
            t,
        }
    }

    #[test]
    fn endpoint_decay() {
        let f = func(&[(Site::RightEndpoint, 0.5, 1)]);
        let p = predict_coeff_decay(&f, &jac(0.0, 0.0)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-2.0, 1, Source::Thm1));
        let f = func(&[(Site::RightEndpoint, 1.0, 1)]);
        let p = predict_coeff_decay(&f, &jac(0.0, 0.0)).unwrap();
        assert_eq!((p.exponent, p.log_power), (-3.0, 0));
        let f = func(&[(Site::RightEndpoint, 0.0, 1)]);
        let p = predict_coeff_decay(&f, &jac(1.0, 1.0)).unwrap();
        assert_eq!((p.exponent, p.log_power), (-2.0, 0));
        let p = predict_coeff_decay(&f, &Basis::Chebyshev).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.0, 0, Source::Cor2));
        let f = func(&[(Site::LeftEndpoint, 0.7, 1)]);
        let p = predict_coeff_decay(&f, &Basis::Chebyshev).unwrap();
        assert!((p.exponent + 2.4).abs() < 1e-15 && p.log_power == 1);
        let p = predict_coeff_decay(&f, &jac(0.0, 2.0)).unwrap();
        assert_eq!(p.source, Source::Thm2);
        let p = predict_coeff_decay(&f, &Basis::Gegenbauer(1.5)).unwrap();
        assert!((p.exponent + 4.4).abs() < 1e-12);
    }

    #[test]
    fn interior_decay() {
        let f = func(&[(Site::Interior(0.5), 3.0, 1)]);
        let p = predict_coeff_decay(&f, &Basis::Chebyshev).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-4.0, 1, Source::Cor3));
        let p = predict_coeff_decay(&f, &jac(3.6, 3.7)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-3.5, 1, Source::Thm3));
        let f = func(&[(Site::Interior(0.5), 0.5, 1)]);
        let p = predict_coeff_decay(&f, &Basis::Gegenbauer(1.5)).unwrap();
        assert_eq!((p.exponent, p.log_power), (-2.0, 1));
        let f = func(&[(Site::Interior(0.5), -0.25, 1)]);
        let p = predict_coeff_decay(&f, &jac(-0.8, 0.0)).unwrap();
        assert_eq!(p.source, Source::Rem3);
        assert!((p.exponent + 0.2).abs() < 1e-12 && p.log_power == 0);
        let p = predict_coeff_decay(&f, &jac(0.0, 0.0)).unwrap();
        assert!((p.exponent + 0.25).abs() < 1e-12 && p.log_power == 1);
        let f = func(&[(Site::Interior(0.5), 2.0, 0)]);
        assert!(predict_coeff_decay(&f, &Basis::Chebyshev).unwrap().is_super_algebraic());
    }

    #[test]
    fn composite_functions() {
        // (1-x)^1 (1+x)^2 ln(1-x^2) sin x
        let f = SingularFunction::new(
            vec![SmoothTerm::Sin],
            vec![
                SingularFactor::new(Site::RightEndpoint, 1.0, 0).unwrap(),
                SingularFactor::new(Site::LeftEndpoint, 2.0, 0).unwrap(),
            ],
        )
        .unwrap()
        .times_log_one_minus_x2(1);
        let p = predict_coeff_decay(&f, &jac(0.0, 0.0)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-3.0, 0, Source::Cor1));
        let g = f.clone().times_factor(SingularFactor::new(Site::Interior(0.2), 1.5, 1).unwrap()).unwrap();
        let p = predict_coeff_decay(&g, &jac(0.0, 0.0)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-2.0, 1, Source::Cor6));
        // equal exponents, different log powers
        let h = func(&[(Site::RightEndpoint, 0.5, 2), (Site::LeftEndpoint, 0.5, 1)]);
        let p = predict_coeff_decay(&h, &jac(0.0, 0.0)).unwrap();
        assert_eq!((p.exponent, p.log_power), (-2.0, 2));
        assert!(p.log_tie);
    }

    #[test]
    fn projection_rates() {
        let f = SingularFunction::new(
            vec![],
            vec![
                SingularFactor::new(Site::RightEndpoint, 0.6, 0).unwrap(),
                SingularFactor::new(Site::LeftEndpoint, 0.4, 0).unwrap(),
            ],
        )
        .unwrap()
        .times_log_one_minus_x2(1);
        let p = predict_projection_rate(&f, &Basis::Chebyshev, 0).unwrap();
        assert!((p.exponent + 1.3).abs() < 1e-12 && p.log_power == 1);
        assert_eq!(p.source, Source::Cor4);
        let p = predict_projection_rate(&f, &jac(3.6, 3.7), 0).unwrap();
        assert!((p.exponent + 5.5).abs() < 1e-12);
        let g = SingularFunction::new(vec![], vec![SingularFactor::new(Site::Interior(0.5), 2.7, 2).unwrap()]).unwrap();
        for basis in [jac(0.0, 0.0), Basis::Chebyshev, jac(3.6, 3.7), Basis::Gegenbauer(2.0)] {
            let p = predict_projection_rate(&g, &basis, 1).unwrap();
            assert!((p.exponent + 2.2).abs() < 1e-12 && p.log_power == 2);
        }
        let h = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, 1.6, 2).unwrap()]).unwrap();
        let p = predict_projection_rate(&h, &jac(0.0, 0.0), 1).unwrap();
        assert!((p.exponent + 3.2).abs() < 1e-12 && p.source == Source::Thm5);
        let poly = SingularFunction::smooth(SmoothTerm::Poly(vec![1.0, 2.0]));
        assert!(predict_projection_rate(&poly, &Basis::Legendre, 0).unwrap().is_super_algebraic());
    }

    #[test]
    fn hypothesis_violations_are_named() {
        let g = SingularFunction::new(vec![], vec![SingularFactor::new(Site::Interior(0.5), 1.0, 1).unwrap()]).unwrap();
        let e = predict_projection_rate(&g, &jac(0.0, 0.0), 2).unwrap_err();
        assert_eq!(e, AsympError::HypothesisViolated("s > 1.5".into()));
        let e = predict_projection_rate(&g, &jac(-0.7, 0.0), 0).unwrap_err();
        assert!(matches!(e, AsympError::HypothesisViolated(s) if s.contains("min{alpha,beta}")));
        let f = func(&[(Site::RightEndpoint, -0.6, 0)]);
        let e = predict_coeff_decay(&f, &jac(-0.5, 0.0)).unwrap_err();
        assert!(matches!(e, AsympError::HypothesisViolated(s) if s == "alpha+gamma > -1"));
        let e = predict_coeff_decay(&f, &Basis::Chebyshev).unwrap_err();
        assert!(matches!(e, AsympError::HypothesisViolated(s) if s == "gamma > -0.5"));
    }

    #[test]
    fn bessel_branches() {
        let p = predict_bessel_rate(&spec(0.0, 0.0, 1, LogSite::AtZero, 0.5)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.0, 1, Source::Lem7));
        let p = predict_bessel_rate(&spec(2.0, 0.0, 0, LogSite::AtZero, 0.3)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.5, 0, Source::Lem3));
        let p = predict_bessel_rate(&spec(1.0, 0.5, 1, LogSite::AtB, 0.5)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-2.0, 1, Source::Lem9));
        assert!(p.log_tie);
        let p = predict_bessel_rate(&spec(0.5, 0.0, 1, LogSite::AtZero, 0.3)).unwrap();
        assert_eq!((p.exponent, p.log_power), (-1.5, 1));
        let p = predict_bessel_rate(&spec(1.0, -0.5, 1, LogSite::AtZero, 0.3)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.0, 0, Source::Lem5));
        let p = predict_bessel_rate(&spec(2.0, -0.5, 1, LogSite::AtB, 0.3)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.0, 1, Source::Lem8));
        let p = predict_bessel_rate(&spec(0.0, 0.0, 0, LogSite::AtZero, 0.5)).unwrap();
        assert_eq!((p.exponent, p.log_power, p.source), (-1.0, 0, Source::Lem6));
        let mut s = spec(0.0, 0.0, 1, LogSite::AtZero, 1.0);
        s.b = 1.0;
        let p = predict_bessel_rate(&s).unwrap();
        assert_eq!((p.exponent, p.log_power), (-1.0, 1));
        let mut s = spec(-0.5, 0.0, 0, LogSite::AtZero, 0.5);
        s.nu = BesselOrder::new(-0.6).unwrap();
        assert!(matches!(predict_bessel_rate(&s), Err(AsympError::HypothesisViolated(_))));
    }

    proptest! {
        #[test]
        fn combination_is_order_independent(
            sites in proptest::collection::vec((-0.45f64..3.0, 0u32..3, -0.9f64..0.9), 1..4),
            a in -0.5f64..4.0, b in -0.5f64..4.0)
        {
            let mut factors: Vec<SingularFactor> = Vec::new();
            for (i, &(e, m, z)) in sites.iter().enumerate() {
                let z = z + 0.01 * i as f64;
                if factors.iter().any(|f| matches!(f.site, Site::Interior(w) if (w - z).abs() < 1e-9)) {
                    continue;
                }
                factors.push(SingularFactor::new(Site::Interior(z), e, m).unwrap());
            }
            factors.push(SingularFactor::new(Site::RightEndpoint, 0.3, 1).unwrap());
            let f1 = SingularFunction::new(vec![], factors.clone()).unwrap();
            factors.reverse();
            let f2 = SingularFunction::new(vec![], factors).unwrap();
            let basis = jac(a, b);
            let p1 = predict_coeff_decay(&f1, &basis).unwrap();
            let p2 = predict_coeff_decay(&f2, &basis).unwrap();
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn total_on_hypothesis_domain(g in -0.99f64..3.0, mu in 0u32..3, a in -0.99f64..4.0) {
            let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, g, mu).unwrap()]).unwrap();
            let r = predict_coeff_decay(&f, &jac(a, 0.0));
            if a + g > -1.0 {
                let p = r.unwrap();
                prop_assert!(p.is_super_algebraic() || (p.exponent + a + 2.0 * g + 1.0).abs() < 1e-12);
            } else {
                prop_assert!(matches!(r, Err(AsympError::HypothesisViolated(_))), "expected violation");
            }
        }
    }
}
