//! The figure matrix behind `singspec repro`.
//!
//! Every case writes one CSV in the format of the matching command and one
//! row of `summary.csv`. Cases run one after another; each parallelizes
//! internally, so the bytes written do not depend on the thread count.

use std::path::Path;

use super::output::{field, num, write_csv, write_plot};
use super::study::{self, Verdict};
use super::{
    bessel_rows, decay_rows, parse_basis_spec, project_rows, BesselArgs, CliError, LogSiteArg, OutArgs, PsiArg,
    ReproArgs, BESSEL_HEADER, DECAY_HEADER, PROJECT_HEADER,
};

/// Minimum slope gap of Jacobi(3.6,3.7) over Chebyshev in the weighted L2 norm.
pub const GAP_TOLERANCE: f64 = 1.0;

pub const SUMMARY_HEADER: &[&str] = &[
    "figure",
    "case",
    "quantity",
    "predicted_exponent",
    "predicted_log_power",
    "fitted_exponent",
    "delta",
    "tolerance",
    "verdict",
    "source",
    "csv",
];

#[derive(Debug, Clone)]
pub enum Kind {
    Decay { f: String, basis: String, n: usize, window: (f64, f64) },
    Projection { f: String, basis: String, m: u32, ns: Vec<usize> },
    /// Slope of `basis` against `reference` on the same degrees.
    SlopeGap { f: String, basis: String, reference: String, ns: Vec<usize> },
    Bessel { alpha: f64, beta: f64, log_site: LogSiteArg, omegas: Vec<f64>, window: (f64, f64) },
}

#[derive(Debug, Clone)]
pub struct Case {
    pub figure: &'static str,
    pub kind: Kind,
}

impl Case {
    pub fn label(&self) -> String {
        match &self.kind {
            Kind::Decay { f, basis, .. } | Kind::Projection { f, basis, .. } => format!("{f} [{basis}]"),
            Kind::SlopeGap { f, basis, reference, .. } => format!("{f} [{basis} vs {reference}]"),
            Kind::Bessel { alpha, beta, log_site, .. } => {
                let site = match log_site {
                    LogSiteArg::Zero => "ln(x)",
                    LogSiteArg::B => "ln(b-x)",
                };
                format!("alpha={alpha} beta={beta} {site}")
            }
        }
    }

    fn quantity(&self) -> &'static str {
        match &self.kind {
            Kind::Decay { .. } => "coefficient_decay",
            Kind::Projection { m: 0, .. } => "l2w_projection_error",
            Kind::Projection { .. } => "sobolev_projection_error",
            Kind::SlopeGap { .. } => "l2w_slope_gap",
            Kind::Bessel { .. } => "bessel_transform",
        }
    }
}

fn range_usize(lo: usize, step: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).step_by(step).collect()
}

fn decay(figure: &'static str, f: &str, basis: &str, n: usize) -> Case {
    let kind = Kind::Decay { f: f.into(), basis: basis.into(), n, window: (n as f64 / 10.0, n as f64) };
    Case { figure, kind }
}

fn projection(figure: &'static str, f: &str, basis: &str, m: u32, ns: Vec<usize>) -> Case {
    Case { figure, kind: Kind::Projection { f: f.into(), basis: basis.into(), m, ns } }
}

/// The full matrix, in output order.
pub fn matrix() -> Vec<Case> {
    let mut v = Vec::new();
    let omegas = study::range(1.0, 1000.0, 1.0);
    for (alpha, beta, log_site) in [
        (0.0, 0.0, LogSiteArg::Zero),
        (1.0, -0.5, LogSiteArg::Zero),
        (-0.5, 1.0, LogSiteArg::Zero),
        (1.0, 0.5, LogSiteArg::B),
        (0.0, 0.0, LogSiteArg::B),
        (2.0, -0.5, LogSiteArg::B),
    ] {
        let kind = Kind::Bessel { alpha, beta, log_site, omegas: omegas.clone(), window: (100.0, 1000.0) };
        v.push(Case { figure: "fig2.1", kind });
    }
    let endpoint = ["log(1-x)", "(1-x)^0.5*log(1-x)", "(1-x)^1*log(1-x)"];
    for f in endpoint {
        for b in ["jacobi:0,0", "jacobi:1,1", "chebyshev"] {
            v.push(decay("fig3.1", f, b, 1000));
        }
    }
    for f in endpoint {
        for b in ["legendre", "gegenbauer:1.5"] {
            v.push(decay("fig3.2", f, b, 1000));
        }
    }
    let three = ["chebyshev", "legendre", "jacobi:1,1"];
    for mu in [1, 2] {
        let f = format!("(1-x)^0.3*(1+x)^0.7*log^{mu}(1-x^2)*sin(x)");
        // the ln^2 envelope needs longer sequences before the lower log terms fade
        let n = if mu == 1 { 1000 } else { 16000 };
        for b in three {
            v.push(decay("fig3.3", &f, b, n));
        }
    }
    for mu in [1, 2] {
        let f = format!("(1-x)^1*(1+x)^2*log^{mu}(1-x^2)*sin(x)");
        for b in three {
            v.push(decay("fig3.4", &f, b, 1000));
        }
    }
    let wide = ["chebyshev", "legendre", "jacobi:3.6,3.7"];
    for s in ["0.5", "3"] {
        let f = format!("|x-0.5|^{s}*log|x-0.5|*cos(x)");
        for b in wide {
            v.push(decay("fig3.5", &f, b, 1000));
        }
    }
    for f in ["(1-x)^0.6*(1+x)^0.4*log(1-x^2)", "(1-x)^1*(1+x)^2*log(1-x^2)"] {
        let ns = range_usize(20, 20, 200);
        v.push(projection("fig4.1", f, "chebyshev", 0, ns.clone()));
        v.push(projection("fig4.1", f, "legendre", 0, ns.clone()));
        let kind = Kind::SlopeGap { f: f.into(), basis: "jacobi:3.6,3.7".into(), reference: "chebyshev".into(), ns };
        v.push(Case { figure: "fig4.1", kind });
    }
    for (s, ns) in [("1", range_usize(100, 100, 1000)), ("2.5", range_usize(400, 400, 4000))] {
        let f = format!("|x-0.5|^{s}*log|x-0.5|");
        for b in wide {
            v.push(projection("fig4.2", &f, b, 0, ns.clone()));
        }
    }
    for b in wide {
        v.push(projection("fig4.3", "|x-0.5|^2.7*log^2|x-0.5|", b, 1, range_usize(100, 100, 1000)));
    }
    for b in ["chebyshev", "legendre"] {
        v.push(projection("fig4.4", "(1-x)^1.6*log^2(1-x)", b, 1, range_usize(100, 100, 1000)));
    }
    v
}

/// One evaluated case.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Option<Verdict>,
    pub fitted: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<CliError>,
}

fn basis_of(s: &str) -> Result<crate::expand::Basis, CliError> {
    parse_basis_spec(s).map_err(CliError::parse)?.build()
}

struct Data {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
    axes: (&'static str, &'static str),
}

fn from_verdict(v: Verdict) -> Outcome {
    Outcome { fitted: v.fitted_exponent(), delta: v.delta, tolerance: v.tolerance, pass: v.pass, verdict: Some(v), error: None }
}

fn evaluate(case: &Case, tol: f64) -> Result<(Outcome, Data), CliError> {
    match &case.kind {
        Kind::Decay { f, basis, n, window } => {
            let d = study::decay_study(&crate::descr::parse(f)?, basis_of(basis)?, *n, *window, tol)?;
            let data = Data { header: DECAY_HEADER, rows: decay_rows(&d), axes: ("n", "|a_n|") };
            Ok((from_verdict(d.verdict), data))
        }
        Kind::Projection { f, basis, m, ns } => {
            let p = study::projection_study(&crate::descr::parse(f)?, basis_of(basis)?, *m, ns, tol)?;
            let data = Data { header: PROJECT_HEADER, rows: project_rows(&p), axes: ("N", "error") };
            Ok((from_verdict(p.verdict), data))
        }
        Kind::SlopeGap { f, basis, reference, ns } => {
            let func = crate::descr::parse(f)?;
            let p = study::projection_study(&func, basis_of(basis)?, 0, ns, tol)?;
            let r = study::projection_study(&func, basis_of(reference)?, 0, ns, tol)?;
            let gap = r.verdict.fitted_exponent() - p.verdict.fitted_exponent();
            let data = Data { header: PROJECT_HEADER, rows: project_rows(&p), axes: ("N", "error") };
            let out = Outcome {
                fitted: p.verdict.fitted_exponent(),
                delta: gap,
                tolerance: GAP_TOLERANCE,
                pass: gap >= GAP_TOLERANCE,
                verdict: Some(p.verdict),
                error: None,
            };
            Ok((out, data))
        }
        Kind::Bessel { alpha, beta, log_site, omegas, window } => {
            let args = BesselArgs {
                alpha: *alpha,
                beta: *beta,
                mu: 1,
                nu: 0.0,
                b: 0.5,
                log_site: *log_site,
                psi: PsiArg::Cos,
                t: None,
                omega: super::F64List(omegas.clone()),
                window: Some(*window),
                out: OutArgs { out: ".".into(), emit_plot: false },
            };
            let s = study::bessel_study(&super::bessel_spec(&args)?, omegas, *window)?;
            let data = Data { header: BESSEL_HEADER, rows: bessel_rows(&s), axes: ("omega", "|I(omega)|") };
            Ok((from_verdict(s.verdict), data))
        }
    }
}

/// Runs `case`, writing its CSV under `dir` as `file`.
pub fn run_case(case: &Case, tol: f64, dir: &Path, file: &str, emit_plot: bool) -> Result<Outcome, CliError> {
    match evaluate(case, tol) {
        Ok((out, data)) => {
            let p = write_csv(dir, file, data.header, &data.rows)?;
            if emit_plot {
                write_plot(&p, data.axes.0, data.axes.1, true)?;
            }
            Ok(out)
        }
        Err(e) if e.category == super::Category::Io => Err(e),
        Err(e) => Ok(Outcome {
            verdict: None,
            fitted: f64::NAN,
            delta: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            error: Some(e),
        }),
    }
}

fn summary_row(case: &Case, out: &Outcome, file: &str) -> Vec<String> {
    let (pred, logp, source) = match &out.verdict {
        Some(v) => (num(v.predicted.exponent), v.predicted.log_power.to_string(), v.predicted.source.to_string()),
        None => (String::new(), String::new(), String::new()),
    };
    let verdict = match (&out.error, out.pass) {
        (Some(e), _) => format!("ERROR:{}", e.category.name()),
        (None, true) => "PASS".into(),
        (None, false) => "FAIL".into(),
    };
    vec![
        field(case.figure),
        field(&case.label()),
        case.quantity().into(),
        pred,
        logp,
        num(out.fitted),
        num(out.delta),
        num(out.tolerance),
        verdict,
        source,
        field(file),
    ]
}

pub fn cmd_repro(a: &ReproArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    let dir = &a.out.out;
    let cases = matrix();
    let mut rows = Vec::with_capacity(cases.len());
    let mut passed = 0;
    for (i, case) in cases.iter().enumerate() {
        let file = format!("{}-{:02}.csv", case.figure, i + 1);
        let out = run_case(case, a.tol, dir, &file, a.out.emit_plot)?;
        let row = summary_row(case, &out, &file);
        lines.push(format!("{} {} {} delta={} verdict={}", case.figure, case.label(), case.quantity(), out.delta, row[8]));
        if let Some(e) = &out.error {
            lines.push(format!("  {e}"));
        }
        passed += out.pass as usize;
        rows.push(row);
    }
    let p = write_csv(dir, "summary.csv", SUMMARY_HEADER, &rows)?;
    lines.push(format!("summary: {passed}/{} PASS", cases.len()));
    lines.push(format!("wrote {}", p.display()));
    Ok(passed == cases.len())
}
