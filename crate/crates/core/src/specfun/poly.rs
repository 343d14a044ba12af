//! Classical orthogonal polynomials on [-1, 1] and their squared norms.

use std::f64::consts::{LN_2, PI};

use super::{ln_gamma_pos, ln_gamma_signed, JacobiParams, SpecFunError};

/// Three-term recurrence `P_{n+1} = (a_n x + b_n) P_n - c_n P_{n-1}` for
/// Jacobi polynomials, tabulated once and reused for many evaluation points.
#[derive(Debug, Clone)]
pub struct JacobiRecurrence {
    params: JacobiParams,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl JacobiRecurrence {
    /// Coefficients sufficient to reach degree `n_max`.
    pub fn new(params: JacobiParams, n_max: usize) -> Self {
        let (al, be) = (params.alpha(), params.beta());
        let ab = al + be;
        let len = n_max.max(1);
        let mut a = Vec::with_capacity(len);
        let mut b = Vec::with_capacity(len);
        let mut c = Vec::with_capacity(len);
        // degree 0 -> 1 uses the explicit P_1, which avoids 0/0 when α+β ∈ {0, -1}
        a.push(0.5 * (ab + 2.0));
        b.push(0.5 * (al - be));
        c.push(0.0);
        for n in 1..len {
            let n = n as f64;
            let s = 2.0 * n + ab;
            let d = 2.0 * (n + 1.0) * (n + ab + 1.0) * s;
            a.push((s + 1.0) * (s + 2.0) * s / d);
            b.push((s + 1.0) * (al * al - be * be) / d);
            c.push(2.0 * (n + al) * (n + be) * (s + 2.0) / d);
        }
        Self { params, a, b, c }
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    /// Highest degree reachable.
    pub fn max_degree(&self) -> usize {
        self.a.len()
    }

    /// Writes `P_0(x), ..., P_{out.len()-1}(x)` into `out`.
    #[inline]
    pub fn fill(&self, x: f64, out: &mut [f64]) {
        assert!(out.len() <= self.a.len() + 1, "recurrence table too short");
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = self.a[0] * x + self.b[0];
        for k in 1..out.len() - 1 {
            out[k + 1] = (self.a[k] * x + self.b[k]) * out[k] - self.c[k] * out[k - 1];
        }
    }

    /// `(a_k, b_k, c_k)` of the step from degree `k` to `k + 1`.
    pub(crate) fn step(&self, k: usize) -> (f64, f64, f64) {
        (self.a[k], self.b[k], self.c[k])
    }

    /// `P_n(x)` by forward recurrence.
    pub fn eval(&self, n: usize, x: f64) -> f64 {
        assert!(n <= self.a.len(), "degree beyond recurrence table");
        if n == 0 {
            return 1.0;
        }
        let mut p0 = 1.0;
        let mut p1 = self.a[0] * x + self.b[0];
        for k in 1..n {
            let p2 = (self.a[k] * x + self.b[k]) * p1 - self.c[k] * p0;
            p0 = p1;
            p1 = p2;
        }
        p1
    }
}

/// Gegenbauer recurrence `(n+1) C_{n+1} = 2(n+λ) x C_n - (n+2λ-1) C_{n-1}`.
#[derive(Debug, Clone)]
pub struct GegenbauerRecurrence {
    lambda: f64,
    a: Vec<f64>,
    c: Vec<f64>,
}

impl GegenbauerRecurrence {
    pub fn new(lambda: f64, n_max: usize) -> Result<Self, SpecFunError> {
        check_lambda(lambda, "GegenbauerRecurrence")?;
        let len = n_max.max(1);
        let mut a = Vec::with_capacity(len);
        let mut c = Vec::with_capacity(len);
        for n in 0..len {
            let n = n as f64;
            a.push(2.0 * (n + lambda) / (n + 1.0));
            c.push((n + 2.0 * lambda - 1.0) / (n + 1.0));
        }
        Ok(Self { lambda, a, c })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_degree(&self) -> usize {
        self.a.len()
    }

    pub(crate) fn step(&self, k: usize) -> (f64, f64, f64) {
        (self.a[k], 0.0, self.c[k])
    }

    #[inline]
    pub fn fill(&self, x: f64, out: &mut [f64]) {
        assert!(out.len() <= self.a.len() + 1, "recurrence table too short");
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = self.a[0] * x;
        for k in 1..out.len() - 1 {
            out[k + 1] = self.a[k] * x * out[k] - self.c[k] * out[k - 1];
        }
    }
}

fn check_lambda(lambda: f64, what: &'static str) -> Result<(), SpecFunError> {
    if !(lambda > -0.5) || lambda == 0.0 || !lambda.is_finite() {
        return Err(SpecFunError::Domain {
            what,
            detail: format!("need lambda > -1/2 and lambda != 0, got {lambda}"),
        });
    }
    Ok(())
}

/// `P_n^{(α,β)}(x)` by forward recurrence.
pub fn jacobi_p(n: usize, p: JacobiParams, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    JacobiRecurrence::new(p, n).eval(n, x)
}

/// Squared norm `σ_n = ∫ (1-x)^α (1+x)^β P_n(x)^2 dx`.
pub fn jacobi_norm(n: usize, p: JacobiParams) -> f64 {
    jacobi_ln_norm(n, p).exp()
}

pub(crate) fn jacobi_ln_norm(n: usize, p: JacobiParams) -> f64 {
    let (al, be) = (p.alpha(), p.beta());
    let ab = al + be;
    let nf = n as f64;
    if n == 0 {
        return (ab + 1.0) * LN_2 + ln_gamma_pos(al + 1.0) + ln_gamma_pos(be + 1.0)
            - ln_gamma_pos(ab + 2.0);
    }
    (ab + 1.0) * LN_2 + ln_gamma_pos(nf + al + 1.0) + ln_gamma_pos(nf + be + 1.0)
        - ln_gamma_pos(nf + 1.0)
        - (2.0 * nf + ab + 1.0).ln()
        - ln_gamma_pos(nf + ab + 1.0)
}

/// `ln |Γ(λ+½)Γ(n+2λ) / (Γ(2λ)Γ(n+λ+½))|` and its sign: the factor with
/// `C_n^{(λ)} = factor · P_n^{(λ-½,λ-½)}`.
pub(crate) fn gegenbauer_jacobi_factor(n: usize, lambda: f64) -> (f64, f64) {
    let nf = n as f64;
    let (l1, s1) = ln_gamma_signed(nf + 2.0 * lambda).expect("lambda validated");
    let (l2, s2) = ln_gamma_signed(2.0 * lambda).expect("lambda validated");
    let ln = ln_gamma_pos(lambda + 0.5) + l1 - l2 - ln_gamma_pos(nf + lambda + 0.5);
    (ln, s1 * s2)
}

/// `C_n^{(λ)}(x)` from the symmetric Jacobi polynomial with `α = β = λ - ½`.
pub fn gegenbauer_c(n: usize, lambda: f64, x: f64) -> Result<f64, SpecFunError> {
    check_lambda(lambda, "gegenbauer_c")?;
    if n == 0 {
        return Ok(1.0);
    }
    let p = JacobiParams::new(lambda - 0.5, lambda - 0.5)?;
    let (ln, sign) = gegenbauer_jacobi_factor(n, lambda);
    Ok(sign * ln.exp() * jacobi_p(n, p, x))
}

/// Squared norm `ħ_n = 2^{1-2λ} π Γ(n+2λ) / (Γ(λ)^2 n! (n+λ))`.
pub fn gegenbauer_norm(n: usize, lambda: f64) -> Result<f64, SpecFunError> {
    check_lambda(lambda, "gegenbauer_norm")?;
    let (ln, sign) = gegenbauer_ln_norm(n, lambda);
    Ok(sign * ln.exp())
}

pub(crate) fn gegenbauer_ln_norm(n: usize, lambda: f64) -> (f64, f64) {
    let nf = n as f64;
    let (lg, _) = ln_gamma_signed(lambda).expect("lambda validated");
    let (l2, s2) = ln_gamma_signed(nf + 2.0 * lambda).expect("lambda validated");
    let d = nf + lambda;
    let ln = (1.0 - 2.0 * lambda) * LN_2 + PI.ln() - 2.0 * lg + l2
        - ln_gamma_pos(nf + 1.0)
        - d.abs().ln();
    (ln, s2 * d.signum())
}

/// `T_n(x)`; trigonometric form on [-1, 1], hyperbolic outside.
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    if x.abs() <= 1.0 {
        (nf * x.acos()).cos()
    } else {
        let s = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        s * (nf * x.abs().acosh()).cosh()
    }
}
