//! Chebyshev coefficients of smooth inputs by exact series algebra.
//!
//! Quadrature resolves coefficients only down to roundoff in `‖f‖`, which
//! hides super-algebraic decay. When `f` is a product of polynomials, `sin`,
//! `cos` and `exp`, the coefficients are products of known series and keep
//! full relative accuracy however small they get.

use super::{SingularFunction, Site, SmoothTerm};
use crate::specfun::ln_gamma_pos;

/// Extra length carried through products so truncation never reaches the
/// requested degrees.
const MARGIN: usize = 64;

/// Chebyshev coefficients `a_0..a_{n_max}`, or `None` when `f` has a
/// singular factor or an opaque smooth term.
pub(crate) fn smooth_chebyshev(f: &SingularFunction, n_max: usize) -> Option<Vec<f64>> {
    if !f.is_smooth() {
        return None;
    }
    let len = n_max + 1 + MARGIN;
    let mut acc = vec![f.scale()];
    for t in f.smooth_terms() {
        let s = match t {
            SmoothTerm::Sin => trig_series(len, true),
            SmoothTerm::Cos => trig_series(len, false),
            SmoothTerm::Exp => exp_series(len),
            SmoothTerm::Poly(c) => poly_series(c),
            SmoothTerm::Custom(..) => return None,
        };
        acc = product(&acc, &s, len);
    }
    for g in f.factors() {
        // is_smooth guarantees a non-negative integer exponent
        let (c0, c1) = match g.site {
            Site::RightEndpoint => (1.0, -1.0),
            Site::LeftEndpoint => (1.0, 1.0),
            Site::Interior(z) => (-z, 1.0),
        };
        let lin = [c0, c1];
        for _ in 0..g.exponent as usize {
            acc = product(&acc, &lin, len);
        }
    }
    acc.resize(len, 0.0);
    acc.truncate(n_max + 1);
    Some(acc)
}

/// `(Σ a_m T_m)(Σ b_k T_k)` through `T_m T_k = (T_{m+k} + T_{|m-k|}) / 2`.
fn product(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let a = trim(a);
    let b = trim(b);
    let mut out = vec![0.0; (a.len() + b.len()).min(len).max(1)];
    for (m, &am) in a.iter().enumerate() {
        if am == 0.0 {
            continue;
        }
        for (k, &bk) in b.iter().enumerate() {
            let h = 0.5 * am * bk;
            if m + k < out.len() {
                out[m + k] += h;
            }
            let d = m.abs_diff(k);
            if d < out.len() {
                out[d] += h;
            }
        }
    }
    out
}

fn trim(v: &[f64]) -> &[f64] {
    let end = v.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1);
    &v[..end]
}

/// Monomial coefficients to Chebyshev, via `x T_k = (T_{k+1} + T_{|k-1|}) / 2`.
fn poly_series(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; c.len().max(1)];
    // Horner in the Chebyshev basis
    for &ck in c.iter().rev() {
        out = product(&out, &[0.0, 1.0], c.len() + 1);
        out.resize(c.len().max(1), 0.0);
        out[0] += ck;
    }
    out
}

/// `Σ_m s^m (1/2)^{2m+k} / (m! (m+k)!)` with `s = -1` for `J_k(1)`, `s = 1` for `I_k(1)`.
fn bessel_at_one(k: usize, s: f64) -> f64 {
    let kf = k as f64;
    let lead = (-kf * std::f64::consts::LN_2 - ln_gamma_pos(kf + 1.0)).exp();
    if lead == 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= s * 0.25 / (m * (m + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// `cos x = J_0(1) + 2 Σ (-1)^k J_{2k}(1) T_{2k}`, `sin x = 2 Σ (-1)^k J_{2k+1}(1) T_{2k+1}`.
fn trig_series(len: usize, odd: bool) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (n, v) in out.iter_mut().enumerate() {
        if (n % 2 == 1) != odd {
            continue;
        }
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let c = if n == 0 { 1.0 } else { 2.0 };
        *v = c * sign * bessel_at_one(n, -1.0);
    }
    out
}

/// `e^x = I_0(1) + 2 Σ I_k(1) T_k`.
fn exp_series(len: usize) -> Vec<f64> {
    (0..len)
        .map(|n| if n == 0 { 1.0 } else { 2.0 } * bessel_at_one(n, 1.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::SingularFactor;
    use crate::specfun::chebyshev_t;

    fn sum(c: &[f64], x: f64) -> f64 {
        c.iter().enumerate().map(|(n, a)| a * chebyshev_t(n, x)).sum()
    }

    #[test]
    fn series_reproduce_the_functions() {
        let f = SingularFunction::new(
            vec![SmoothTerm::Exp, SmoothTerm::Sin, SmoothTerm::Poly(vec![0.5, -2.0, 0.0, 3.0])],
            vec![
                SingularFactor::new(Site::RightEndpoint, 2.0, 0).unwrap(),
                SingularFactor::new(Site::Interior(0.3), 2.0, 0).unwrap(),
            ],
        )
        .unwrap()
        .scaled(-1.5);
        let c = smooth_chebyshev(&f, 60).unwrap();
        for x in [-1.0, -0.71, 0.0, 0.3, 0.93, 1.0] {
            assert!((sum(&c, x) - f.eval(x)).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn known_bessel_values() {
        // J_0(1), J_5(1), I_1(1)
        assert!((bessel_at_one(0, -1.0) - 0.765_197_686_557_966_55).abs() < 1e-16);
        assert!((bessel_at_one(5, -1.0) / 2.497_577_302_112_344e-4 - 1.0).abs() < 1e-14);
        assert!((bessel_at_one(1, 1.0) - 0.565_159_103_992_485_03).abs() < 1e-16);
    }

    #[test]
    fn singular_and_opaque_inputs_are_declined() {
        let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::RightEndpoint, 0.5, 0).unwrap()]).unwrap();
        assert!(smooth_chebyshev(&f, 10).is_none());
        let g = SingularFunction::smooth(SmoothTerm::custom("g", |x| x));
        assert!(smooth_chebyshev(&g, 10).is_none());
    }
}
