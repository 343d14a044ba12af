//! CSV and plot-script writers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::CliError;

/// Full-precision scientific notation (17 significant digits).
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Quotes a field containing a comma or quote.
pub fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::new(super::Category::Io, format!("{}: {e}", dir.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::new(super::Category::Io, format!("{}: {e}", path.display())))
}

/// Writes `header` and `rows` to `dir/name`, returning the path.
pub fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CliError> {
    ensure_dir(dir)?;
    let mut text = header.join(",");
    text.push('\n');
    for r in rows {
        text.push_str(&r.join(","));
        text.push('\n');
    }
    let path = dir.join(name);
    write_file(&path, &text)?;
    Ok(path)
}

/// A gnuplot script next to `csv` plotting column 2 (points) and, when
/// present, column 3 (line) against column 1 on log-log axes.
pub fn write_plot(csv: &Path, xlabel: &str, ylabel: &str, envelope: bool) -> Result<PathBuf, CliError> {
    let name = csv.file_name().and_then(|s| s.to_str()).unwrap_or("data.csv");
    let stem = name.trim_end_matches(".csv");
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key autotitle columnhead");
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set format y '%.0e'");
    let _ = writeln!(s, "set xlabel '{xlabel}'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let _ = writeln!(s, "set terminal pngcairo size 800,600");
    let _ = writeln!(s, "set output '{stem}.png'");
    if envelope {
        let _ = writeln!(s, "plot '{name}' using 1:2 with points pt 7 ps 0.4, '' using 1:3 with lines lw 2");
    } else {
        let _ = writeln!(s, "plot '{name}' using 1:2 with linespoints pt 7");
    }
    let path = csv.with_extension("gp");
    write_file(&path, &s)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(num(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn fields_with_commas_are_quoted() {
        assert_eq!(field("jacobi:0,0"), "\"jacobi:0,0\"");
        assert_eq!(field("legendre"), "legendre");
        assert_eq!(field("a\"b,"), "\"a\"\"b,\"");
    }

    #[test]
    fn csv_and_plot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_csv(dir.path(), "t.csv", &["n", "v", "e"], &[vec!["1".into(), num(0.5), num(0.25)]]).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "n,v,e\n1,5.0000000000000000e-1,2.5000000000000000e-1\n");
        let g = write_plot(&p, "n", "|a_n|", true).unwrap();
        let text = fs::read_to_string(g).unwrap();
        assert!(text.contains("plot 't.csv' using 1:2"));
        assert!(text.contains("set output 't.png'"));
    }
}
