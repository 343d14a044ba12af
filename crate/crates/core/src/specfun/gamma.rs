//! Logarithm of the gamma function.
//!
//! Three regimes:
//! * `x >= 10`: Stirling series with eight Bernoulli corrections.
//! * `1.5 <= x < 10`: Taylor series of `ln Γ(2 + z)` after downward recursion into `[1.5, 2.5)`.
//! * `x < 1.5`: upward recursion `ln Γ(x) = ln Γ(x + 1) - ln x`.
//!
//! The Taylor expansion around 2 keeps full relative accuracy near the zeros of
//! `ln Γ` at 1 and 2, where Lanczos-style approximations lose digits.

use std::f64::consts::PI;

use super::SpecFunError;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `(ζ(k) - 1) / k` for `k = 2, 3, ...`.
const ZETA_M1_OVER_K: [f64; 29] = [
    0.322_467_033_424_113_2,
    0.067_352_301_053_198_1,
    0.020_580_808_427_784_55,
    0.007_385_551_028_673_985,
    0.002_890_510_330_741_523,
    0.001_192_753_911_703_261,
    0.000_509_669_524_743_042_4,
    0.000_223_154_758_453_579_4,
    9.945_751_278_180_853e-5,
    4.492_623_673_813_314e-5,
    2.050_721_277_567_069e-5,
    9.439_488_275_268_396e-6,
    4.374_866_789_907_488e-6,
    2.039_215_753_801_366e-6,
    9.551_412_130_407_42e-7,
    4.492_469_198_764_566e-7,
    2.120_718_480_555_467e-7,
    1.004_322_482_396_81e-7,
    4.769_810_169_363_981e-8,
    2.271_109_460_894_317e-8,
    1.083_865_921_489_695e-8,
    5.183_475_041_970_047e-9,
    2.483_674_543_802_478e-9,
    1.192_140_140_586_091e-9,
    5.731_367_241_678_862e-10,
    2.759_522_885_124_233e-10,
    1.330_476_437_424_449e-10,
    6.422_964_563_838_1e-11,
    3.104_424_774_732_227e-11,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "ln_gamma",
            detail: format!("argument must be finite and positive, got {x}"),
        });
    }
    Ok(ln_gamma_pos(x))
}

/// `ln Γ(x)` without argument checks; `x` must be positive.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x >= 10.0 {
        return stirling(x);
    }
    if x < 1.5 {
        // ln x via ln_1p keeps precision as x -> 1.
        let ln_x = if (x - 1.0).abs() < 0.5 { (x - 1.0).ln_1p() } else { x.ln() };
        return ln_gamma_pos(x + 1.0) - ln_x;
    }
    let mut acc = 0.0;
    let mut y = x;
    while y >= 2.5 {
        y -= 1.0;
        acc += y.ln();
    }
    acc + taylor_about_two(y - 2.0)
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub(crate) fn ln_gamma_signed(x: f64) -> Result<(f64, f64), SpecFunError> {
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    if x == x.round() || !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "ln_gamma_signed",
            detail: format!("pole of the gamma function at {x}"),
        });
    }
    // Γ(x) Γ(1 - x) = π / sin(πx)
    let s = sin_pi(x);
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x);
    Ok((ln_abs, s.signum()))
}

fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

fn taylor_about_two(z: f64) -> f64 {
    // ln Γ(2 + z) = (1 - γ) z + Σ_{k≥2} (-1)^k (ζ(k) - 1) z^k / k
    let mut sum = 0.0;
    let mut zk = z;
    for (i, c) in ZETA_M1_OVER_K.iter().enumerate() {
        zk *= z;
        let term = if i % 2 == 0 { c * zk } else { -c * zk };
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    (1.0 - EULER_GAMMA) * z + sum
}

fn stirling(x: f64) -> f64 {
    const B: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for b in B {
        corr += b * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}
