//! Predicted decay rates and empirical slope fits.

mod fit;
mod hilb_scan;
mod predict;

pub use fit::{fit_decay, peak_envelope, DecayFit, MIN_INDEX, MIN_SAMPLES};
pub use hilb_scan::{hilb_residual_scan, HilbRow, ThetaGrid};
pub use predict::{
    predict_bessel_rate, predict_coeff_decay, predict_projection_rate, Applicability,
    RatePrediction, Source,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsympError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("insufficient data: {found} usable samples, need {needed} ({excluded} excluded)")]
    InsufficientData { found: usize, needed: usize, excluded: usize },
    #[error("invalid fit window [{lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },
    #[error("theta grid outside the validity strip: {0}")]
    OutsideValidity(String),
}
