//! Least-squares fits of `|a| ≈ c · n^p · ln^m n`.

use super::AsympError;

pub const MIN_SAMPLES: usize = 8;
pub const MIN_INDEX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub log_power_used: u32,
    pub residual_rms: f64,
    pub window: (f64, f64),
    pub used: usize,
    /// Samples in the window dropped for zero, denormal or non-finite magnitude.
    pub excluded: usize,
}

/// Fits `ln|a| - m ln ln n = ln c + p ln n` over samples with `lo <= n <= hi`.
pub fn fit_decay(samples: &[(f64, f64)], log_power: u32, window: (f64, f64)) -> Result<DecayFit, AsympError> {
    let (lo, hi) = window;
    if !(lo >= MIN_INDEX && hi > lo) {
        return Err(AsympError::InvalidWindow { lo, hi });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut excluded = 0;
    for &(n, a) in samples {
        if !(n >= lo && n <= hi) {
            continue;
        }
        let m = a.abs();
        if !(m >= f64::MIN_POSITIVE) || !m.is_finite() {
            excluded += 1;
            continue;
        }
        let ln_n = n.ln();
        xs.push(ln_n);
        ys.push(m.ln() - log_power as f64 * ln_n.ln());
    }
    if xs.len() < MIN_SAMPLES {
        return Err(AsympError::InsufficientData { found: xs.len(), needed: MIN_SAMPLES, excluded });
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let p = sxy / sxx;
    let ln_c = my - p * mx;
    let ss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - ln_c - p * x).powi(2)).sum();
    Ok(DecayFit {
        exponent: p,
        amplitude: ln_c.exp(),
        log_power_used: log_power,
        residual_rms: (ss / k).sqrt(),
        window,
        used: xs.len(),
        excluded,
    })
}

/// Points that dominate every later sample: the decreasing upper envelope
/// of an oscillating or sign-changing sequence.
pub fn peak_envelope(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut best = 0.0f64;
    for &(n, a) in samples.iter().rev() {
        let m = a.abs();
        if m > best {
            best = m;
            out.push((n, m));
        }
    }
    out.reverse();
    out
}
