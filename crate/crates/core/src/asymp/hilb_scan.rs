//! Scaled residual of the Hilb-type approximation over the validity strip.

use std::f64::consts::PI;

use super::AsympError;
use crate::specfun::{hilb_main_term, hilb_weight, JacobiParams, JacobiRecurrence};

/// Multiple of `n ε` taken as the relative roundoff of the recurrence.
const NOISE_FACTOR: f64 = 64.0;

/// `points` equispaced angles in `[c/n, π - eps]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub c: f64,
    pub eps: f64,
    pub points: usize,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        Self { c: 2.0, eps: 0.3, points: 2000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilbRow {
    pub n: usize,
    pub scaled_max: f64,
    /// Scaled size of the roundoff in the reference `P_n`, about `n ε |P_n|`.
    pub noise_floor: f64,
}

/// For each `n`, the maximum over the grid of
/// `|P_n(cos θ) - H_n(θ)| · w(θ) · Ñ^{3/2} · θ^{-1/2}`, where `H_n` is the
/// Hilb main term and `w` the weight it carries.
pub fn hilb_residual_scan(p: JacobiParams, ns: &[usize], grid: ThetaGrid) -> Result<Vec<HilbRow>, AsympError> {
    if !(grid.c >= 2.0) || !(grid.eps >= 0.3) || grid.points < 2 {
        return Err(AsympError::OutsideValidity(format!(
            "need c >= 2, eps >= 0.3 and at least two points, got c={}, eps={}, points={}",
            grid.c, grid.eps, grid.points
        )));
    }
    for &n in ns {
        if n == 0 || grid.c / n as f64 >= PI - grid.eps {
            return Err(AsympError::OutsideValidity(format!("empty strip for n={n}")));
        }
    }
    let rows = crate::par::map_indexed(ns.len(), |i| {
        let n = ns[i];
        let rec = JacobiRecurrence::new(p, n);
        let nt = n as f64 + 0.5 * (p.alpha() + p.beta() + 1.0);
        let lo = grid.c / n as f64;
        let hi = PI - grid.eps;
        let mut best = 0.0f64;
        let mut floor = 0.0f64;
        for k in 0..grid.points {
            let x = (lo + (hi - lo) * k as f64 / (grid.points - 1) as f64).cos();
            // the angle the rounded abscissa actually represents
            let th = x.acos();
            let exact = rec.eval(n, x);
            let approx = hilb_main_term(n, p, th).expect("theta inside (0, pi)");
            let w = hilb_weight(p, th).expect("theta inside (0, pi)");
            let scale = w * nt.powf(1.5) / th.sqrt();
            best = best.max((exact - approx).abs() * scale);
            floor = floor.max(exact.abs() * scale);
        }
        HilbRow { n, scaled_max: best, noise_floor: NOISE_FACTOR * n as f64 * f64::EPSILON * floor }
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns() -> Vec<usize> {
        (0..5).map(|k| 64 << k).collect()
    }

    #[test]
    fn legendre_residual_is_bounded() {
        let rows = hilb_residual_scan(JacobiParams::legendre(), &ns(), ThetaGrid::default()).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].scaled_max / w[0].scaled_max <= 1.5, "{w:?}");
        }
        assert!(rows.iter().all(|r| r.scaled_max > 1e3 * r.noise_floor), "{rows:?}");
    }

    #[test]
    fn chebyshev_case_is_nearly_exact() {
        let rows = hilb_residual_scan(JacobiParams::chebyshev(), &ns(), ThetaGrid::default()).unwrap();
        // only recurrence roundoff remains, amplified by the Ñ^{3/2}/θ scaling
        assert!(rows.iter().all(|r| r.scaled_max < r.noise_floor), "{rows:?}");
    }

    #[test]
    fn grid_outside_strip_is_rejected() {
        let p = JacobiParams::legendre();
        let g = ThetaGrid { c: 1.0, ..ThetaGrid::default() };
        assert!(matches!(hilb_residual_scan(p, &[64], g), Err(AsympError::OutsideValidity(_))));
        let g = ThetaGrid { eps: 0.1, ..ThetaGrid::default() };
        assert!(matches!(hilb_residual_scan(p, &[64], g), Err(AsympError::OutsideValidity(_))));
        assert!(matches!(hilb_residual_scan(p, &[0], ThetaGrid::default()), Err(AsympError::OutsideValidity(_))));
    }
}
