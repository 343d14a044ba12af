//! Bessel transforms `∫_0^t ln^μ(·) x^α (b-x)^β ψ(x) J_ν(ωx) dx`.
//!
//! Graded panels (order 24) resolve the algebraic-logarithmic endpoints;
//! away from them the interval is cut into panels no longer than `π/(2ω)`
//! and integrated with 12-point Gauss–Legendre.

use std::f64::consts::PI;

use super::gauss::cached_legendre;
use super::mesh::{build_panels, half_depth, GradedSite, Panel, PanelTag};
use super::QuadError;
use crate::expand::SmoothTerm;
use crate::numeric::Neumaier;
use crate::par::map_indexed;
use crate::specfun::{bessel_j_unchecked, BesselOrder};

/// Where the logarithmic factor sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogSite {
    /// `ln^μ(x)`
    AtZero,
    /// `ln^μ(b - x)`
    AtB,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscIntegralSpec {
    pub alpha: f64,
    pub beta: f64,
    pub mu: u32,
    pub nu: BesselOrder,
    pub b: f64,
    pub log_site: LogSite,
    pub psi: SmoothTerm,
    pub t: f64,
}

impl OscIntegralSpec {
    pub fn validate(&self) -> Result<(), QuadError> {
        let nu = self.nu.value();
        let bad = |m: String| Err(QuadError::InvalidSpec(m));
        if !(self.alpha + nu > -1.0) {
            return bad(format!("alpha + nu = {} must exceed -1", self.alpha + nu));
        }
        if !(self.beta > -1.0) {
            return bad(format!("beta = {} must exceed -1", self.beta));
        }
        if !(self.b > 0.0) || !self.b.is_finite() {
            return bad(format!("b = {} must be positive", self.b));
        }
        if !(self.t >= 0.0 && self.t <= self.b) {
            return bad(format!("upper limit t = {} must lie in [0, b]", self.t));
        }
        Ok(())
    }

    #[inline]
    fn amplitude(&self, x: f64, d0: f64, db: f64) -> f64 {
        let mut v = self.psi_eval(x);
        if self.alpha != 0.0 {
            v *= d0.powf(self.alpha);
        }
        if self.beta != 0.0 {
            v *= db.powf(self.beta);
        }
        if self.mu > 0 {
            let l = match self.log_site {
                LogSite::AtZero => d0.ln(),
                LogSite::AtB => db.ln(),
            };
            v *= l.powi(self.mu as i32);
        }
        v
    }

    #[inline]
    fn psi_eval(&self, x: f64) -> f64 {
        match &self.psi {
            SmoothTerm::Sin => x.sin(),
            SmoothTerm::Cos => x.cos(),
            SmoothTerm::Exp => x.exp(),
            SmoothTerm::Poly(c) => c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci),
            SmoothTerm::Custom(f, _) => f(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscOptions {
    /// Oscillation panels are at most `panel_fraction · π / ω` long.
    pub panel_fraction: f64,
    pub osc_order: usize,
    pub graded_order: usize,
    pub grading_ratio: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for OscOptions {
    fn default() -> Self {
        Self {
            panel_fraction: 0.5,
            osc_order: 12,
            graded_order: 24,
            grading_ratio: 0.15,
            abs_tol: 1e-11,
            rel_tol: 1e-8,
        }
    }
}

const MAX_HALF_DEPTH: usize = 170;

fn sites(spec: &OscIntegralSpec, omega: f64, ratio: f64, growth: f64) -> Vec<GradedSite> {
    let nu = spec.nu.value();
    let mut out = Vec::new();
    let mu0 = if spec.log_site == LogSite::AtZero { spec.mu } else { 0 };
    // J_ν(ωx) ~ (ωx)^ν near 0: measure lengths in units of 1/ω
    let e0 = spec.alpha + nu;
    let len0 = (spec.t * omega).max(1.0);
    let h0 = half_depth(e0, mu0, len0, ratio, 1e-24, MAX_HALF_DEPTH);
    let scale = (h0 as f64 * growth).ceil() as usize;
    out.push(GradedSite { position: 0.0, half_depth: scale.clamp(2, MAX_HALF_DEPTH) });
    if spec.t == spec.b {
        let mub = if spec.log_site == LogSite::AtB { spec.mu } else { 0 };
        let hb = half_depth(spec.beta, mub, spec.b, ratio, 1e-24, MAX_HALF_DEPTH);
        let hb = ((hb as f64 * growth).ceil() as usize).clamp(2, MAX_HALF_DEPTH);
        out.push(GradedSite { position: spec.b, half_depth: hb });
    } else {
        // the singularity at b sits just outside [0, t]; grade toward t so
        // panels near t stay shorter than their distance to b
        let gap = spec.b - spec.t;
        if gap < 0.5 * spec.t {
            let levels = ((gap / spec.t).ln() / ratio.ln()).ceil().max(1.0) as usize + 2;
            out.push(GradedSite { position: spec.t, half_depth: levels.clamp(2, MAX_HALF_DEPTH) });
        }
    }
    out
}

fn split_oscillatory(panels: Vec<Panel>, max_len: f64, opts: &OscOptions) -> Vec<(Panel, usize)> {
    let mut out = Vec::with_capacity(panels.len());
    for p in panels {
        let len = p.hi - p.lo;
        let k = (len / max_len).ceil() as usize;
        if k <= 1 {
            out.push((p, opts.graded_order));
            continue;
        }
        let step = len / k as f64;
        for i in 0..k {
            let lo = p.lo + step * i as f64;
            let hi = if i + 1 == k { p.hi } else { p.lo + step * (i + 1) as f64 };
            out.push((Panel { anchor: p.anchor, lo, hi, tag: p.tag }, opts.osc_order));
        }
    }
    out
}

fn evaluate(spec: &OscIntegralSpec, omega: f64, panels: &[(Panel, usize)]) -> (f64, f64) {
    let nu = spec.nu.value();
    let b = spec.b;
    let mut shared = Neumaier::default();
    let mut fine = Neumaier::default();
    let mut coarse = Neumaier::default();
    for (p, order) in panels {
        let rule = cached_legendre(*order);
        let mut acc = Neumaier::default();
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let (pt, jac) = p.map(t);
            let d0 = if pt.anchor == 0.0 { pt.offset } else { pt.x };
            let db = if pt.anchor == b { -pt.offset } else { b - pt.x };
            let v = spec.amplitude(pt.x, d0, db) * bessel_j_unchecked(nu, omega * d0);
            acc.add(w * jac * v);
        }
        match p.tag {
            PanelTag::Shared => shared.merge(&acc),
            PanelTag::FineOnly => fine.merge(&acc),
            PanelTag::CoarseOnly => coarse.merge(&acc),
        }
    }
    let err = (fine.sum() - coarse.sum()).abs();
    shared.merge(&fine);
    (shared.sum(), err)
}

/// The transform at frequency `omega` with default options.
pub fn bessel_transform(spec: &OscIntegralSpec, omega: f64) -> Result<f64, QuadError> {
    bessel_transform_with(spec, omega, &OscOptions::default()).map(|(v, _)| v)
}

/// The transform and its error estimate.
pub fn bessel_transform_with(
    spec: &OscIntegralSpec,
    omega: f64,
    opts: &OscOptions,
) -> Result<(f64, f64), QuadError> {
    spec.validate()?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(QuadError::InvalidSpec(format!("omega = {omega} must be positive")));
    }
    if spec.t == 0.0 {
        return Ok((0.0, 0.0));
    }
    let max_len = opts.panel_fraction * PI / omega;
    let mut growth = 1.0;
    loop {
        let s = sites(spec, omega, opts.grading_ratio, growth);
        let panels = build_panels(0.0, spec.t, &s, opts.grading_ratio);
        let panels = split_oscillatory(panels, max_len, opts);
        let (v, err) = evaluate(spec, omega, &panels);
        let tol = opts.abs_tol + opts.rel_tol * v.abs();
        if err <= tol {
            return Ok((v, err));
        }
        if s.iter().all(|g| g.half_depth >= MAX_HALF_DEPTH) {
            return Err(QuadError::NoConvergence { index: 0, value: v, err_est: err, tol });
        }
        growth *= 1.5;
    }
}

/// The transform at each frequency, in input order.
pub fn bessel_transform_sweep(
    spec: &OscIntegralSpec,
    omegas: &[f64],
    opts: &OscOptions,
) -> Result<Vec<f64>, QuadError> {
    spec.validate()?;
    map_indexed(omegas.len(), |i| bessel_transform_with(spec, omegas[i], opts).map(|(v, _)| v))
        .into_iter()
        .collect()
}

/// `∫_X^∞ u^α J_ν(u) du` for large `X`, from the Hankel expansion of `J_ν`
/// integrated term by term (valid for `α < 1/2`).
pub fn bessel_moment_tail(alpha: f64, nu: BesselOrder, x: f64) -> Result<f64, QuadError> {
    let nu = nu.value();
    if !(alpha < 0.5) || !(x > 0.0) {
        return Err(QuadError::InvalidSpec(format!(
            "tail needs alpha < 1/2 and X > 0, got alpha={alpha}, X={x}"
        )));
    }
    // J_ν(u) = sqrt(2/π) Re[e^{i(u-φ)} Σ_k i^k a_k u^{-k-1/2}]
    // ∫_X^∞ u^c e^{iu} du = e^{iX} Σ_j i^{j+1} c(c-1)...(c-j+1) X^{c-j}
    let mu4 = 4.0 * nu * nu;
    let mut re = 0.0;
    let mut im = 0.0;
    let mut a_k = 1.0f64;
    let mut prev_outer = f64::INFINITY;
    for k in 0..60u32 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a_k *= (mu4 - odd * odd) / (k as f64 * 8.0);
        }
        if a_k == 0.0 {
            break;
        }
        let c = alpha - k as f64 - 0.5;
        let mut term = a_k * x.powf(c);
        let outer = term.abs();
        if outer > prev_outer && outer > 1e-12 {
            break;
        }
        prev_outer = outer;
        let mut prev_inner = f64::INFINITY;
        for j in 0..60u32 {
            if j > 0 {
                term *= (c - (j - 1) as f64) / x;
            }
            let mag = term.abs();
            if mag > prev_inner || mag < 1e-18 {
                break;
            }
            prev_inner = mag;
            // i^{k+j+1}
            match (k + j + 1) % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
        }
        if outer < 1e-18 {
            break;
        }
    }
    let phase = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = phase.sin_cos();
    Ok((2.0 / PI).sqrt() * (c * re - s * im))
}
