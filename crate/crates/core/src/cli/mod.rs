//! The `singspec` command-line driver.

mod config;
mod error;
pub mod output;
pub mod repro;
pub mod study;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{Category, CliError};

use crate::asymp::{predict_coeff_decay, predict_projection_rate, ThetaGrid};
use crate::expand::{check_l2w, check_sobolev, coefficients, Basis, SmoothTerm};
use crate::quad::{LogSite, OscIntegralSpec};
use crate::specfun::{BesselOrder, JacobiParams};
use output::{num, write_csv, write_plot};

/// Exit code of a completed run whose verdict is FAIL.
pub const EXIT_FAIL_VERDICT: i32 = 1;

const SUBCOMMANDS: &[&str] = &["coeffs", "decay", "project-error", "bessel-rate", "hilb", "predict", "repro"];

#[derive(Debug, Parser)]
#[command(name = "singspec", version, about = "Expansion coefficients and decay rates of functions with algebraic-logarithmic singularities")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "SINGSPEC_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// key=value file of flags; flags on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients a_0..a_N.
    Coeffs(CoeffsArgs),
    /// Coefficient decay: fitted vs predicted exponent.
    Decay(DecayArgs),
    /// Projection error over a list of truncation degrees.
    #[command(name = "project-error")]
    ProjectError(ProjectArgs),
    /// Decay in omega of an oscillatory Bessel transform.
    #[command(name = "bessel-rate")]
    BesselRate(BesselArgs),
    /// Scaled residual of the Hilb-type approximation.
    Hilb(HilbArgs),
    /// Predicted exponent, log power and source, without computation.
    Predict(PredictArgs),
    /// The full figure matrix and its summary table.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Function descriptor, e.g. '(1-x)^0.5*log(1-x)'.
    #[arg(long = "f", value_name = "DESCRIPTOR")]
    pub f: String,
    /// jacobi:a,b | gegenbauer:l | legendre | chebyshev
    #[arg(long, value_parser = parse_basis_spec)]
    pub basis: BasisSpec,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write a gnuplot script per CSV.
    #[arg(long)]
    pub emit_plot: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    #[arg(long = "N", default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-13, value_parser = parse_tol)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DecayArgs {
    #[arg(long = "f", value_name = "DESCRIPTOR", required_unless_present = "synthetic")]
    pub f: Option<String>,
    #[arg(long, value_parser = parse_basis_spec, required_unless_present = "synthetic")]
    pub basis: Option<BasisSpec>,
    #[arg(long = "N", default_value_t = 1000)]
    pub n: usize,
    /// Fit window lo,hi (default N/10,N).
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    #[arg(long, default_value_t = 1e-13, value_parser = parse_tol)]
    pub tol: f64,
    /// Exact n^p ln^m n input instead of coefficients.
    #[arg(long, hide = true, value_name = "P,M", allow_hyphen_values = true, conflicts_with_all = ["f", "basis"])]
    pub synthetic: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// Sobolev order (0 = weighted L2).
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Degrees: lo:step:hi or a comma list.
    #[arg(long = "N-list", default_value = "20:20:200", value_parser = parse_usize_list)]
    pub n_list: UsizeList,
    #[arg(long, default_value_t = 1e-13, value_parser = parse_tol)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogSiteArg {
    Zero,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PsiArg {
    Cos,
    Sin,
    Exp,
    One,
}

#[derive(Debug, Clone, Args)]
pub struct BesselArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1)]
    pub mu: u32,
    #[arg(long, default_value_t = 0.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    #[arg(long, value_enum, default_value = "zero")]
    pub log_site: LogSiteArg,
    #[arg(long, value_enum, default_value = "cos")]
    pub psi: PsiArg,
    /// Upper limit (default b).
    #[arg(long)]
    pub t: Option<f64>,
    /// Frequencies: lo:step:hi or a comma list.
    #[arg(long, default_value = "100:10:1000", value_parser = parse_f64_list)]
    pub omega: F64List,
    /// Fit window lo,hi (default the span of --omega, from 10).
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HilbArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long = "n-list", default_value = "64,128,256,512,1024", value_parser = parse_usize_list)]
    pub n_list: UsizeList,
    /// Strip starts at c/n.
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Strip ends at pi - eps.
    #[arg(long, default_value_t = 0.3)]
    pub eps: f64,
    #[arg(long, default_value_t = 2000)]
    pub points: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// Predict the projection rate in this Sobolev order instead of coefficient decay.
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproArgs {
    #[arg(long, default_value_t = 1e-13, value_parser = parse_tol)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Basis as written on the command line; parameters are checked later.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisSpec {
    Jacobi(f64, f64),
    Gegenbauer(f64),
    Legendre,
    Chebyshev,
}

impl BasisSpec {
    pub fn build(self) -> Result<Basis, CliError> {
        Ok(match self {
            BasisSpec::Jacobi(a, b) => Basis::Jacobi(JacobiParams::new(a, b)?),
            BasisSpec::Gegenbauer(l) => Basis::gegenbauer(l)?,
            BasisSpec::Legendre => Basis::Legendre,
            BasisSpec::Chebyshev => Basis::Chebyshev,
        })
    }
}

pub fn parse_basis_spec(s: &str) -> Result<BasisSpec, String> {
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in basis {s:?}"));
    match s.split_once(':') {
        Some(("jacobi", p)) => {
            let (a, b) = p.split_once(',').ok_or_else(|| format!("expected jacobi:a,b, got {s:?}"))?;
            Ok(BasisSpec::Jacobi(num(a)?, num(b)?))
        }
        Some(("gegenbauer", l)) => Ok(BasisSpec::Gegenbauer(num(l)?)),
        None if s == "legendre" => Ok(BasisSpec::Legendre),
        None if s == "chebyshev" => Ok(BasisSpec::Chebyshev),
        _ => Err(format!("unknown basis {s:?}; expected jacobi:a,b | gegenbauer:l | legendre | chebyshev")),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("bad tolerance {s:?}"))?;
    if !(1e-14..1.0).contains(&t) {
        return Err(format!("tolerance must lie in [1e-14, 1), got {t}"));
    }
    Ok(t)
}

pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad window bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad window bound {b:?}"))?;
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct F64List(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct UsizeList(pub Vec<usize>);

/// `lo:step:hi` or `a,b,c`.
pub fn parse_f64_list(s: &str) -> Result<F64List, String> {
    let bad = |t: &str| format!("bad number {t:?} in list {s:?}");
    let v: Vec<f64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, step, hi] = parts[..] else {
            return Err(format!("expected lo:step:hi, got {s:?}"));
        };
        let p = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(t));
        let (lo, step, hi) = (p(lo)?, p(step)?, p(hi)?);
        if !(step > 0.0) || !(hi >= lo) {
            return Err(format!("empty range {s:?}"));
        }
        study::range(lo, hi, step)
    } else {
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad(t))).collect::<Result<_, _>>()?
    };
    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
        return Err(format!("empty or non-finite list {s:?}"));
    }
    Ok(F64List(v))
}

pub fn parse_usize_list(s: &str) -> Result<UsizeList, String> {
    parse_f64_list(s)?
        .0
        .into_iter()
        .map(|x| {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(format!("expected non-negative integers in {s:?}, got {x}"))
            }
        })
        .collect::<Result<_, _>>()
        .map(UsizeList)
}

pub fn basis_label(b: &BasisSpec) -> String {
    match *b {
        BasisSpec::Jacobi(a, c) => format!("jacobi:{a},{c}"),
        BasisSpec::Gegenbauer(l) => format!("gegenbauer:{l}"),
        BasisSpec::Legendre => "legendre".into(),
        BasisSpec::Chebyshev => "chebyshev".into(),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<O: Write, E: Write>(args: Vec<OsString>, out: &mut O, err: &mut E) -> i32 {
    let args = match config::merge(args, SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => return report(e, err),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "{}", CliError::parse(first));
            for l in msg.lines().skip(1).filter(|l| !l.trim().is_empty()) {
                let _ = writeln!(err, "{l}");
            }
            return Category::Parse.exit_code();
        }
    };
    let threads = cli.threads;
    let mut lines = Vec::new();
    let result = crate::par::with_threads(threads, || dispatch(cli.command, &mut lines));
    for l in &lines {
        let _ = writeln!(out, "{l}");
    }
    match result {
        Ok(true) => 0,
        Ok(false) => EXIT_FAIL_VERDICT,
        Err(e) => report(e, err),
    }
}

fn report<E: Write>(e: CliError, err: &mut E) -> i32 {
    let _ = writeln!(err, "{e}");
    e.category.exit_code()
}

/// Executes one command; `Ok(false)` means a FAIL verdict.
fn dispatch(cmd: Command, lines: &mut Vec<String>) -> Result<bool, CliError> {
    match cmd {
        Command::Coeffs(a) => cmd_coeffs(&a, lines).map(|_| true),
        Command::Decay(a) => cmd_decay(&a, lines),
        Command::ProjectError(a) => cmd_project_error(&a, lines),
        Command::BesselRate(a) => cmd_bessel_rate(&a, lines),
        Command::Hilb(a) => cmd_hilb(&a, lines),
        Command::Predict(a) => cmd_predict(&a, lines).map(|_| true),
        Command::Repro(a) => repro::cmd_repro(&a, lines),
    }
}

fn written(path: &Path, plot: Option<PathBuf>, lines: &mut Vec<String>) {
    lines.push(format!("wrote {}", path.display()));
    if let Some(p) = plot {
        lines.push(format!("wrote {}", p.display()));
    }
}

fn maybe_plot(o: &OutArgs, csv: &Path, x: &str, y: &str, envelope: bool) -> Result<Option<PathBuf>, CliError> {
    if o.emit_plot {
        write_plot(csv, x, y, envelope).map(Some)
    } else {
        Ok(None)
    }
}

fn cmd_coeffs(a: &CoeffsArgs, lines: &mut Vec<String>) -> Result<(), CliError> {
    let f = crate::descr::parse(&a.func.f)?;
    let basis = a.func.basis.build()?;
    let s = coefficients(&f, basis, a.n, a.tol)?;
    let rows: Vec<Vec<String>> = (0..s.len())
        .map(|n| vec![n.to_string(), num(s.values[n]), num(s.values[n].abs()), num(s.err_ests[n])])
        .collect();
    let p = write_csv(&a.out.out, "coeffs.csv", &["n", "coefficient", "abs_coefficient", "err_est"], &rows)?;
    let g = maybe_plot(&a.out, &p, "n", "coefficient", false)?;
    written(&p, g, lines);
    Ok(())
}

pub fn decay_rows(d: &study::DecayStudy) -> Vec<Vec<String>> {
    d.rows().into_iter().map(|(n, a, e)| vec![n.to_string(), num(a), num(e)]).collect()
}

pub const DECAY_HEADER: &[&str] = &["n", "abs_coefficient", "predicted_envelope"];
pub const PROJECT_HEADER: &[&str] = &["N", "error", "predicted_envelope"];
pub const BESSEL_HEADER: &[&str] = &["omega", "abs_integral", "predicted_envelope"];
pub const HILB_HEADER: &[&str] = &["n", "scaled_max_residual"];

fn default_window(n: usize) -> (f64, f64) {
    ((n as f64 / 10.0).max(crate::asymp::MIN_INDEX), n as f64)
}

fn cmd_decay(a: &DecayArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    if let Some(spec) = &a.synthetic {
        return cmd_synthetic(spec, a.n, a.window, &a.out, lines);
    }
    let window = a.window.unwrap_or_else(|| default_window(a.n));
    let f = crate::descr::parse(a.f.as_deref().unwrap_or_default())?;
    let basis = a.basis.expect("required by clap").build()?;
    let d = study::decay_study(&f, basis, a.n, window, a.tol)?;
    let p = write_csv(&a.out.out, "decay.csv", DECAY_HEADER, &decay_rows(&d))?;
    let g = maybe_plot(&a.out, &p, "n", "|a_n|", true)?;
    lines.push(d.verdict.line());
    written(&p, g, lines);
    Ok(d.verdict.pass)
}

/// Hidden hook: the decay check on an exact `n^p ln^m n` sequence.
fn cmd_synthetic(spec: &str, n: usize, window: Option<(f64, f64)>, o: &OutArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    let (p, m) = spec.split_once(',').ok_or_else(|| CliError::parse("--synthetic expects p,m"))?;
    let p: f64 = p.trim().parse().map_err(|_| CliError::parse(format!("bad exponent {p:?}")))?;
    let m: u32 = m.trim().parse().map_err(|_| CliError::parse(format!("bad log power {m:?}")))?;
    let d = study::synthetic_decay_study(p, m, n, window.unwrap_or_else(|| default_window(n)))?;
    let path = write_csv(&o.out, "decay.csv", DECAY_HEADER, &decay_rows(&d))?;
    lines.push(d.verdict.line());
    written(&path, maybe_plot(o, &path, "n", "|a_n|", true)?, lines);
    Ok(d.verdict.pass)
}

pub fn project_rows(p: &study::ProjectionStudy) -> Vec<Vec<String>> {
    p.errors
        .iter()
        .map(|&(n, e)| vec![n.to_string(), num(e), num(p.verdict.envelope(n as f64))])
        .collect()
}

fn cmd_project_error(a: &ProjectArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    let f = crate::descr::parse(&a.func.f)?;
    let basis = a.func.basis.build()?;
    let s = study::projection_study(&f, basis, a.m, &a.n_list.0, a.tol)?;
    let p = write_csv(&a.out.out, "project_error.csv", PROJECT_HEADER, &project_rows(&s))?;
    let g = maybe_plot(&a.out, &p, "N", "error", true)?;
    lines.push(s.verdict.line());
    written(&p, g, lines);
    Ok(s.verdict.pass)
}

pub fn bessel_spec(a: &BesselArgs) -> Result<OscIntegralSpec, CliError> {
    let spec = OscIntegralSpec {
        alpha: a.alpha,
        beta: a.beta,
        mu: a.mu,
        nu: BesselOrder::new(a.nu)?,
        b: a.b,
        log_site: match a.log_site {
            LogSiteArg::Zero => LogSite::AtZero,
            LogSiteArg::B => LogSite::AtB,
        },
        psi: match a.psi {
            PsiArg::Cos => SmoothTerm::Cos,
            PsiArg::Sin => SmoothTerm::Sin,
            PsiArg::Exp => SmoothTerm::Exp,
            PsiArg::One => SmoothTerm::Poly(vec![1.0]),
        },
        t: a.t.unwrap_or(a.b),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn bessel_rows(s: &study::BesselStudy) -> Vec<Vec<String>> {
    s.values
        .iter()
        .map(|&(w, v)| vec![num(w), num(v.abs()), num(s.verdict.envelope(w))])
        .collect()
}

fn cmd_bessel_rate(a: &BesselArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    let spec = bessel_spec(a)?;
    let lo = a.omega.0.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = a.omega.0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let window = a.window.unwrap_or((lo.max(crate::asymp::MIN_INDEX), hi));
    let s = study::bessel_study(&spec, &a.omega.0, window)?;
    let p = write_csv(&a.out.out, "bessel_rate.csv", BESSEL_HEADER, &bessel_rows(&s))?;
    let g = maybe_plot(&a.out, &p, "omega", "|I(omega)|", true)?;
    lines.push(s.verdict.line());
    written(&p, g, lines);
    Ok(s.verdict.pass)
}

pub fn hilb_rows(h: &study::HilbStudy) -> Vec<Vec<String>> {
    h.rows.iter().map(|r| vec![r.n.to_string(), num(r.scaled_max)]).collect()
}

fn cmd_hilb(a: &HilbArgs, lines: &mut Vec<String>) -> Result<bool, CliError> {
    let p = JacobiParams::new(a.alpha, a.beta)?;
    let grid = ThetaGrid { c: a.c, eps: a.eps, points: a.points };
    let h = study::hilb_study(p, &a.n_list.0, grid)?;
    let path = write_csv(&a.out.out, "hilb.csv", HILB_HEADER, &hilb_rows(&h))?;
    let g = maybe_plot(&a.out, &path, "n", "scaled max residual", false)?;
    lines.push(h.line());
    written(&path, g, lines);
    Ok(h.pass)
}

fn cmd_predict(a: &PredictArgs, lines: &mut Vec<String>) -> Result<(), CliError> {
    let f = crate::descr::parse(&a.func.f)?;
    let basis = a.func.basis.build()?;
    check_l2w(&f, &basis)?;
    let r = match a.m {
        Some(m) => {
            if m > 0 {
                check_sobolev(&f, &study::sobolev_basis(basis), m)?;
            }
            predict_projection_rate(&f, &basis, m)?
        }
        None => predict_coeff_decay(&f, &basis)?,
    };
    lines.push(format!("exponent={} log_power={} source={}", r.exponent, r.log_power, r.source));
    if r.log_tie {
        lines.push("flag=log_tie".into());
    }
    Ok(())
}
