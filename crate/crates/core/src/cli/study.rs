//! Computations behind the commands: data, prediction, fit and verdict.

use crate::asymp::{
    fit_decay, hilb_residual_scan, peak_envelope, predict_bessel_rate, predict_coeff_decay,
    predict_projection_rate, Applicability, AsympError, DecayFit, HilbRow, RatePrediction, Source, ThetaGrid,
};
use crate::expand::{
    check_sobolev, coefficients, l2w_projection_error, sobolev_projection_error, Basis, CoefficientSeries,
    SingularFunction,
};
use crate::quad::{bessel_transform_sweep, OscIntegralSpec, OscOptions};
use crate::specfun::JacobiParams;

use super::CliError;

pub const DECAY_TOLERANCE: f64 = 0.1;
pub const BESSEL_TOLERANCE: f64 = 0.15;
pub const HILB_RATIO: f64 = 1.5;

/// Ratio `|a_hi| / |a_lo|` below which super-algebraic decay is accepted.
pub const SUPER_ALGEBRAIC_RATIO: f64 = 1.0 / 1024.0;

/// Stored degree per largest projection degree.
pub const STORAGE_FACTOR: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub predicted: RatePrediction,
    pub fit: Option<DecayFit>,
    /// Fitted minus predicted exponent; for super-algebraic predictions the
    /// observed `log2` ratio over the window.
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// `c` in the predicted envelope `c · n^p ln^m n`, matched to the data.
    pub amplitude: f64,
}

impl Verdict {
    pub fn fitted_exponent(&self) -> f64 {
        self.fit.map_or(f64::NAN, |f| f.exponent)
    }

    pub fn envelope(&self, n: f64) -> f64 {
        self.amplitude * self.predicted.envelope(n)
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "verdict={} predicted={} log_power={} fitted={} delta={} tolerance={} source={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.predicted.exponent,
            self.predicted.log_power,
            self.fitted_exponent(),
            self.delta,
            self.tolerance,
            self.predicted.source
        );
        if self.predicted.log_tie {
            s.push_str(" log_tie=true");
        }
        s
    }
}

/// Fits the peak envelope of `samples` over `window` with the predicted log power.
pub fn judge(
    predicted: RatePrediction,
    samples: &[(f64, f64)],
    window: (f64, f64),
    tolerance: f64,
) -> Result<Verdict, CliError> {
    if predicted.is_super_algebraic() {
        return Ok(judge_super_algebraic(predicted, samples, window));
    }
    let peaks = peak_envelope(samples);
    let fit = fit_decay(&peaks, predicted.log_power, window)?;
    let delta = fit.exponent - predicted.exponent;
    let logs: Vec<f64> = peaks
        .iter()
        .filter(|&&(n, a)| n >= window.0 && n <= window.1 && a > 0.0)
        .map(|&(n, a)| a.ln() - predicted.envelope(n).ln())
        .collect();
    let amplitude = (logs.iter().sum::<f64>() / logs.len() as f64).exp();
    Ok(Verdict { predicted, fit: Some(fit), delta, tolerance, pass: delta.abs() <= tolerance, amplitude })
}

fn judge_super_algebraic(predicted: RatePrediction, samples: &[(f64, f64)], window: (f64, f64)) -> Verdict {
    let nearest = |t: f64| {
        samples
            .iter()
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
            .map_or(0.0, |s| s.1.abs())
    };
    let (lo, hi) = (nearest(window.0), nearest(window.1));
    let ratio = hi / lo;
    let pass = hi == 0.0 || ratio < SUPER_ALGEBRAIC_RATIO;
    Verdict { predicted, fit: None, delta: ratio.log2(), tolerance: SUPER_ALGEBRAIC_RATIO.log2(), pass, amplitude: 0.0 }
}

#[derive(Debug, Clone)]
pub struct DecayStudy {
    pub series: CoefficientSeries,
    pub verdict: Verdict,
}

impl DecayStudy {
    /// `(n, |a_n|, predicted envelope)` for `n >= 1`.
    pub fn rows(&self) -> Vec<(usize, f64, f64)> {
        (1..self.series.len())
            .map(|n| (n, self.series.values[n].abs(), self.verdict.envelope(n as f64)))
            .collect()
    }
}

pub fn decay_study(
    f: &SingularFunction,
    basis: Basis,
    n_max: usize,
    window: (f64, f64),
    tol: f64,
) -> Result<DecayStudy, CliError> {
    let predicted = predict_coeff_decay(f, &basis)?;
    let series = coefficients(f, basis, n_max, tol)?;
    let samples: Vec<(f64, f64)> = (1..series.len()).map(|n| (n as f64, series.values[n].abs())).collect();
    let verdict = judge(predicted, &samples, window, DECAY_TOLERANCE)?;
    Ok(DecayStudy { series, verdict })
}

/// The decay check on an exact `n^p ln^m n` sequence.
pub fn synthetic_decay_study(exponent: f64, log_power: u32, n_max: usize, window: (f64, f64)) -> Result<DecayStudy, CliError> {
    let predicted = RatePrediction {
        exponent,
        log_power,
        applicability: Applicability::CoefficientDecay,
        source: Source::Thm1,
        log_tie: false,
    };
    let mut values = vec![0.0; n_max + 1];
    for (n, v) in values.iter_mut().enumerate().skip(1) {
        *v = predicted.envelope(n as f64);
    }
    let series = CoefficientSeries::new(Basis::Legendre, values, vec![0.0; n_max + 1])?;
    let samples: Vec<(f64, f64)> = (1..series.len()).map(|n| (n as f64, series.values[n])).collect();
    let verdict = judge(predicted, &samples, window, DECAY_TOLERANCE)?;
    Ok(DecayStudy { series, verdict })
}

#[derive(Debug, Clone)]
pub struct ProjectionStudy {
    pub errors: Vec<(usize, f64)>,
    pub verdict: Verdict,
}

pub fn projection_study(
    f: &SingularFunction,
    basis: Basis,
    m: u32,
    ns: &[usize],
    tol: f64,
) -> Result<ProjectionStudy, CliError> {
    let n_top = *ns.iter().max().ok_or_else(|| CliError::parse("empty N list"))?;
    if ns.len() < crate::asymp::MIN_SAMPLES {
        return Err(CliError::from(AsympError::InsufficientData {
            found: ns.len(),
            needed: crate::asymp::MIN_SAMPLES,
            excluded: 0,
        }));
    }
    let predicted = predict_projection_rate(f, &basis, m)?;
    let sobolev = m > 0;
    let fit_basis = if sobolev { sobolev_basis(basis) } else { basis };
    if sobolev {
        check_sobolev(f, &fit_basis, m)?;
    }
    let series = coefficients(f, fit_basis, STORAGE_FACTOR * n_top, tol)?;
    let errors = ns
        .iter()
        .map(|&n| {
            let e = if sobolev { sobolev_projection_error(&series, n, m) } else { l2w_projection_error(&series, n) };
            e.map(|e| (n, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let samples: Vec<(f64, f64)> = errors.iter().map(|&(n, e)| (n as f64, e)).collect();
    let lo = *ns.iter().min().expect("non-empty") as f64;
    let verdict = judge(predicted, &samples, (lo.max(crate::asymp::MIN_INDEX), n_top as f64), DECAY_TOLERANCE)?;
    Ok(ProjectionStudy { errors, verdict })
}

/// Sobolev norms live on the Jacobi family; Chebyshev is Jacobi(-1/2, -1/2).
pub fn sobolev_basis(basis: Basis) -> Basis {
    match basis {
        Basis::Chebyshev => Basis::Jacobi(JacobiParams::chebyshev()),
        b => b,
    }
}

#[derive(Debug, Clone)]
pub struct BesselStudy {
    pub values: Vec<(f64, f64)>,
    pub verdict: Verdict,
}

pub fn bessel_study(spec: &OscIntegralSpec, omegas: &[f64], window: (f64, f64)) -> Result<BesselStudy, CliError> {
    let predicted = predict_bessel_rate(spec)?;
    let vals = bessel_transform_sweep(spec, omegas, &OscOptions::default())?;
    let values: Vec<(f64, f64)> = omegas.iter().copied().zip(vals).collect();
    let samples: Vec<(f64, f64)> = values.iter().map(|&(w, v)| (w, v.abs())).collect();
    let verdict = judge(predicted, &samples, window, BESSEL_TOLERANCE)?;
    Ok(BesselStudy { values, verdict })
}

#[derive(Debug, Clone)]
pub struct HilbStudy {
    pub rows: Vec<HilbRow>,
    /// Largest ratio of successive maxima over rows above their roundoff floor.
    pub max_ratio: f64,
    pub at_floor: usize,
    pub pass: bool,
}

impl HilbStudy {
    pub fn line(&self) -> String {
        format!(
            "verdict={} max_ratio={} tolerance={} rows_at_roundoff_floor={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.max_ratio,
            HILB_RATIO,
            self.at_floor
        )
    }
}

pub fn hilb_study(p: JacobiParams, ns: &[usize], grid: ThetaGrid) -> Result<HilbStudy, CliError> {
    let rows = hilb_residual_scan(p, ns, grid)?;
    let above = |r: &HilbRow| r.scaled_max > r.noise_floor;
    let mut max_ratio = 0.0f64;
    for w in rows.windows(2) {
        // a row at the floor carries no information about the remainder
        if above(&w[0]) && above(&w[1]) {
            max_ratio = max_ratio.max(w[1].scaled_max / w[0].scaled_max);
        } else if above(&w[1]) {
            max_ratio = f64::INFINITY;
        }
    }
    let at_floor = rows.iter().filter(|r| !above(r)).count();
    Ok(HilbStudy { pass: max_ratio <= HILB_RATIO, rows, max_ratio, at_floor })
}

/// Evenly spaced `lo, lo+step, ..., <= hi`.
pub fn range(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| lo + step * k as f64).collect()
}
