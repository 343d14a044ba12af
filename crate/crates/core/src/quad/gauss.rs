//! Gauss–Legendre and Gauss–Jacobi rules.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use super::eig::tridiagonal_eigenvalues;
use super::QuadError;
use crate::specfun::{ln_gamma_pos, JacobiParams, JacobiRecurrence};

pub const MAX_RULE_SIZE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    GaussLegendre,
    GaussJacobi { alpha: f64, beta: f64 },
}

/// Nodes in ascending order with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k f(x_k)` in node order.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = crate::numeric::Neumaier::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.sum()
    }
}

fn check_size(n: usize) -> Result<(), QuadError> {
    if n == 0 || n > MAX_RULE_SIZE {
        return Err(QuadError::Size { n, max: MAX_RULE_SIZE });
    }
    Ok(())
}

/// `(P_n(x), P_n'(x))` for Legendre polynomials.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// n-point Gauss–Legendre rule by Newton iteration on the recurrence.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule, QuadError> {
    check_size(n)?;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for k in 0..n.div_ceil(2) {
        let mut x = (PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // roots come out in descending order
        nodes[n - 1 - k] = x;
        weights[n - 1 - k] = w;
        nodes[k] = -x;
        weights[k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights, kind: RuleKind::GaussLegendre })
}

/// n-point Gauss–Jacobi rule for the weight `(1-x)^α (1+x)^β`: Golub–Welsch
/// eigenvalues polished by Newton steps on `P_n^{(α,β)}`.
pub fn gauss_jacobi(n: usize, p: JacobiParams) -> Result<QuadratureRule, QuadError> {
    check_size(n)?;
    let (a, b) = (p.alpha(), p.beta());
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        if k == 0 {
            diag.push((b - a) / (ab + 2.0));
        } else {
            let s = 2.0 * kf + ab;
            diag.push((b * b - a * a) / (s * (s + 2.0)));
        }
        let j = kf + 1.0;
        if k + 1 < n {
            let s = 2.0 * j + ab;
            let v = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off.push(v.sqrt());
        }
    }
    let mut nodes = tridiagonal_eigenvalues(&diag, &off);

    let rec = JacobiRecurrence::new(p, n);
    let drec = if n > 1 { Some(JacobiRecurrence::new(p.shifted(1), n - 1)) } else { None };
    let nf = n as f64;
    let dscale = 0.5 * (nf + ab + 1.0);
    let deriv = |x: f64| match &drec {
        Some(r) => dscale * r.eval(n - 1, x),
        None => dscale,
    };
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let dx = rec.eval(n, *x) / deriv(*x);
            let nx = *x - dx;
            if !(nx > -1.0 && nx < 1.0) {
                break;
            }
            *x = nx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
    }
    // Christoffel function of the orthonormal recurrence: no large-argument
    // gamma ratios, and every term is positive
    let mu0 = ((ab + 1.0) * LN_2 + ln_gamma_pos(a + 1.0) + ln_gamma_pos(b + 1.0) - ln_gamma_pos(ab + 2.0)).exp();
    let weights = nodes
        .iter()
        .map(|&x| {
            let (mut prev, mut cur) = (0.0, 1.0);
            let mut acc = 1.0;
            for j in 0..n - 1 {
                let back = if j == 0 { 0.0 } else { off[j - 1] * prev };
                let next = ((x - diag[j]) * cur - back) / off[j];
                prev = cur;
                cur = next;
                acc += cur * cur;
            }
            mu0 / acc
        })
        .collect();
    Ok(QuadratureRule { nodes, weights, kind: RuleKind::GaussJacobi { alpha: a, beta: b } })
}

/// Shared Gauss–Legendre rules used by the composite integrators.
pub(crate) fn cached_legendre(n: usize) -> Arc<QuadratureRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("rule cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(gauss_legendre(n).expect("valid rule size")))
        .clone()
}
