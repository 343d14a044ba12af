//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines are always printed. The process
//! fails when a criterion fails that is not listed in `UNATTAINABLE`.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use singspec::cli::study::{self, DECAY_TOLERANCE};
use singspec::cli::repro::{self, Kind, GAP_TOLERANCE};
use singspec::descr::parse;
use singspec::expand::{
    coefficients, convert_jacobi_to_chebyshev, convert_jacobi_to_gegenbauer, Basis, SingularFunction, SmoothTerm,
};
use singspec::quad::{bessel_transform, bessel_moment_tail, gauss_jacobi, LogSite, OscIntegralSpec};
use singspec::specfun::{bessel_moment_closed_form, jacobi_norm, jacobi_p, BesselOrder, JacobiParams};

/// Criteria whose literal statement cannot hold for any implementation.
/// The reasons are printed with the criterion.
const UNATTAINABLE: &[usize] = &[2];

struct Outcome {
    pass: bool,
    detail: String,
}

fn jac(a: f64, b: f64) -> Basis {
    Basis::Jacobi(JacobiParams::new(a, b).unwrap())
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for (a, b) in [(-0.5, -0.5), (0.0, 0.0), (1.0, 1.0), (3.6, 3.7)] {
        let p = JacobiParams::new(a, b).unwrap();
        let rule = gauss_jacobi(64, p).unwrap();
        for m in 0..=60 {
            for n in m..=60 {
                let v = rule.integrate(|x| jacobi_p(m, p, x) * jacobi_p(n, p, x));
                let s = jacobi_norm(n, p);
                let want = if m == n { s } else { 0.0 };
                worst = worst.max((v - want).abs() / s);
            }
        }
    }
    Outcome { pass: worst <= 1e-10, detail: format!("max |<P_m,P_n> - delta sigma_n| / sigma_n = {worst:.3e} (tol 1e-10)") }
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut completed = 0.0f64;
    let mut parts = Vec::new();
    for (a, n) in [(0.0, 0.0), (0.3, 1.0), (-0.4, 0.5)] {
        let x = 40.0 * (1.0 + n);
        let nu = BesselOrder::new(n).unwrap();
        let s = OscIntegralSpec {
            alpha: a,
            beta: 0.0,
            mu: 0,
            nu,
            b: x,
            log_site: LogSite::AtZero,
            psi: SmoothTerm::Poly(vec![1.0]),
            t: x,
        };
        let head = bessel_transform(&s, 1.0).unwrap();
        let want = bessel_moment_closed_form(a, nu).unwrap();
        let tail = bessel_moment_tail(a, nu, x).unwrap();
        worst = worst.max((head - want).abs());
        completed = completed.max((head + tail - want).abs());
        parts.push(format!("({a},{n}): {:.3e}", (head - want).abs()));
    }
    Outcome {
        pass: worst <= 5e-3,
        detail: format!(
            "|int_0^X - closed form| {} (tol 5e-3); the gap is the tail int_X^inf of size X^(alpha-1/2); with the asymptotic tail added the error is {completed:.1e}",
            parts.join(", ")
        ),
    }
}

fn decay_delta(f: &str, basis: Basis) -> f64 {
    let d = study::decay_study(&parse(f).unwrap(), basis, 1000, (100.0, 1000.0), 1e-13).unwrap();
    d.verdict.delta
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for f in ["log(1-x)", "(1-x)^0.5*log(1-x)", "(1-x)^1*log(1-x)"] {
        for b in [jac(0.0, 0.0), jac(1.0, 1.0), Basis::Chebyshev] {
            let t = Instant::now();
            worst = worst.max(decay_delta(f, b).abs());
            slowest = slowest.max(t.elapsed());
        }
    }
    Outcome {
        pass: worst <= DECAY_TOLERANCE && slowest < Duration::from_secs(180),
        detail: format!("9 cases, max |delta| = {worst:.4} (tol 0.1), slowest case {slowest:.1?} (limit 3 min)"),
    }
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [0.5, 3.0] {
        let f = format!("|x-0.5|^{s}*log|x-0.5|*cos(x)");
        let g = parse(&f).unwrap();
        let fit = |b: Basis| {
            study::decay_study(&g, b, 1000, (100.0, 1000.0), 1e-13).unwrap().verdict.fitted_exponent()
        };
        let j00 = fit(jac(0.0, 0.0));
        let j36 = fit(jac(3.6, 3.7));
        let ch = fit(Basis::Chebyshev);
        ok &= (j00 + s + 0.5).abs() <= 0.1 && (j36 + s + 0.5).abs() <= 0.1 && (ch + 1.0 + s).abs() <= 0.1;
        parts.push(format!("s={s}: J(0,0) {j00:.3}, J(3.6,3.7) {j36:.3} vs {}, T {ch:.3} vs {}", -s - 0.5, -1.0 - s));
    }
    Outcome { pass: ok, detail: parts.join("; ") }
}

fn criterion_5() -> Outcome {
    let fs = [
        parse("(1-x)^0.5*log(1-x)*exp(x)").unwrap(),
        parse("|x-0.3|^1.5*log|x-0.3|*(1+x)^0.7").unwrap(),
    ];
    let mut worst = 0.0f64;
    for f in &fs {
        let direct = coefficients(f, Basis::Gegenbauer(1.5), 200, 1e-14).unwrap();
        let via = convert_jacobi_to_gegenbauer(&coefficients(f, jac(1.0, 1.0), 200, 1e-14).unwrap()).unwrap();
        for n in 0..=200 {
            worst = worst.max((direct.values[n] - via.values[n]).abs());
        }
        let direct = coefficients(f, Basis::Chebyshev, 200, 1e-14).unwrap();
        let via = convert_jacobi_to_chebyshev(&coefficients(f, jac(-0.5, -0.5), 200, 1e-14).unwrap()).unwrap();
        for n in 0..=200 {
            worst = worst.max((direct.values[n] - via.values[n]).abs());
        }
    }
    Outcome { pass: worst <= 1e-9, detail: format!("max |direct - converted| over n <= 200 = {worst:.3e} (tol 1e-9)") }
}

fn criterion_6() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut worst = 0.0f64;
    let mut ok = true;
    for (i, c) in repro::matrix().into_iter().filter(|c| matches!(c.kind, Kind::Bessel { .. })).enumerate() {
        let out = repro::run_case(&c, 1e-13, dir.path(), &format!("{i}.csv"), false).unwrap();
        ok &= out.pass && out.tolerance == 0.15;
        worst = worst.max(out.delta.abs());
    }
    Outcome { pass: ok, detail: format!("6 configurations, omega in [100,1000], max |delta| = {worst:.4} (tol 0.15)") }
}

fn slope(f: &SingularFunction, b: Basis, m: u32, ns: &[usize]) -> (f64, f64) {
    let p = study::projection_study(f, b, m, ns, 1e-13).unwrap();
    (p.verdict.fitted_exponent(), p.verdict.predicted.exponent)
}

fn criterion_7() -> Outcome {
    let short: Vec<usize> = (20..=200).step_by(20).collect();
    let long: Vec<usize> = (100..=1000).step_by(100).collect();
    let f41 = parse("(1-x)^0.6*(1+x)^0.4*log(1-x^2)").unwrap();
    let (ch, _) = slope(&f41, Basis::Chebyshev, 0, &short);
    let (j, _) = slope(&f41, jac(3.6, 3.7), 0, &short);
    let a = (ch + 1.3).abs() <= 0.1 && ch - j >= GAP_TOLERANCE;
    let f42 = parse("|x-0.5|^1*log|x-0.5|").unwrap();
    let b_slopes: Vec<f64> =
        [Basis::Chebyshev, Basis::Legendre, jac(3.6, 3.7)].into_iter().map(|b| slope(&f42, b, 0, &long).0).collect();
    let b = b_slopes.iter().all(|s| (s + 1.5).abs() <= 0.1);
    let f44 = parse("(1-x)^1.6*log^2(1-x)").unwrap();
    let (c44, _) = slope(&f44, jac(0.0, 0.0), 1, &long);
    let c = (c44 + 3.2).abs() <= 0.15;
    Outcome {
        pass: a && b && c,
        detail: format!(
            "(a) T {ch:.3} vs -1.3, J(3.6,3.7) {j:.3}, gap {:.3} >= 1.0: {}; (b) {:.3?} vs -1.5: {}; (c) {c44:.3} vs -3.2 +- 0.15: {}",
            ch - j,
            tag(a),
            b_slopes,
            tag(b),
            tag(c)
        ),
    }
}

fn criterion_8() -> Outcome {
    let ns: Vec<usize> = (0..5).map(|k| 64 << k).collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [-0.5, 0.0, 1.0] {
        let h = study::hilb_study(JacobiParams::new(a, a).unwrap(), &ns, Default::default()).unwrap();
        ok &= h.pass;
        parts.push(format!("alpha=beta={a}: max ratio {:.3}, rows at roundoff floor {}", h.max_ratio, h.at_floor));
    }
    Outcome { pass: ok, detail: parts.join("; ") }
}

fn criterion_9() -> Outcome {
    let f = parse("|x-0.5|^2*cos(x)").unwrap();
    let c = coefficients(&f, Basis::Chebyshev, 200, 1e-14).unwrap();
    let r = c.values[200].abs() / c.values[100].abs();
    Outcome { pass: r < 2f64.powi(-10), detail: format!("|a_200|/|a_100| = {r:.3e} (< 2^-10)") }
}

fn read_csvs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

fn criterion_10() -> Outcome {
    let root = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for threads in ["1", "8"] {
        let dir = root.path().join(format!("t{threads}"));
        let st = Command::new(env!("CARGO_BIN_EXE_singspec"))
            .args(["repro", "--threads", threads, "--out"])
            .arg(&dir)
            .output()
            .unwrap();
        // a FAIL row exits 1 but still writes every file
        assert!(matches!(st.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&st.stderr));
        runs.push(read_csvs(&dir));
    }
    let same = runs[0] == runs[1] && !runs[0].is_empty();
    Outcome { pass: same, detail: format!("{} CSV files, byte-identical at 1 and 8 threads: {same}", runs[0].len()) }
}

fn tag(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() {
    let criteria: [(usize, &str, f64, fn() -> Outcome); 10] = [
        (1, "orthogonality of Gauss-Jacobi", 10.0, criterion_1),
        (2, "Bessel moment closed form", 30.0, criterion_2),
        (3, "endpoint coefficient decay", f64::INFINITY, criterion_3),
        (4, "interior coefficient decay", 300.0, criterion_4),
        (5, "conversion consistency", 120.0, criterion_5),
        (6, "Bessel transform rates", 600.0, criterion_6),
        (7, "projection error rates", 600.0, criterion_7),
        (8, "Hilb residual scan", 60.0, criterion_8),
        (9, "super-algebraic decay", 60.0, criterion_9),
        (10, "determinism of repro", f64::INFINITY, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let t = Instant::now();
        let out = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Outcome { pass: false, detail: format!("panicked: {e:?}") });
        let secs = t.elapsed().as_secs_f64();
        let pass = out.pass && secs < limit;
        println!("criterion {id:>2} {} {name}: {} [{secs:.1}s]", tag(pass), out.detail);
        if !pass && !UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
