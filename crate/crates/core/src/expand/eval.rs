//! Partial sums of expansions by Clenshaw's backward recurrence.

use super::{Basis, CoefficientSeries};
use crate::specfun::{GegenbauerRecurrence, JacobiParams, JacobiRecurrence};

fn clenshaw<S: Fn(usize) -> (f64, f64, f64)>(a: &[f64], x: f64, step: S) -> f64 {
    let mut y1 = 0.0;
    let mut y2 = 0.0;
    for k in (0..a.len()).rev() {
        let (ak, bk, _) = step(k);
        let c_next = if k + 1 < a.len() { step(k + 1).2 } else { 0.0 };
        let y = a[k] + (ak * x + bk) * y1 - c_next * y2;
        y2 = y1;
        y1 = y;
    }
    y1
}

/// `Σ_{n ≤ N} a_n φ_n(x)`.
///
/// # Panics
/// If `n_max` is beyond the stored degree.
pub fn evaluate_projection(s: &CoefficientSeries, n_max: usize, x: f64) -> f64 {
    assert!(n_max < s.len(), "partial sum degree {n_max} beyond series degree {}", s.degree());
    let a = &s.values[..=n_max];
    match s.basis {
        Basis::Jacobi(p) => {
            let r = JacobiRecurrence::new(p, n_max + 1);
            clenshaw(a, x, |k| r.step(k))
        }
        Basis::Legendre => {
            let r = JacobiRecurrence::new(JacobiParams::legendre(), n_max + 1);
            clenshaw(a, x, |k| r.step(k))
        }
        Basis::Gegenbauer(l) => {
            let r = GegenbauerRecurrence::new(l, n_max + 1).expect("lambda validated");
            clenshaw(a, x, |k| r.step(k))
        }
        Basis::Chebyshev => clenshaw(a, x, |k| if k == 0 { (1.0, 0.0, 0.0) } else { (2.0, 0.0, 1.0) }),
    }
}
