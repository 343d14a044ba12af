//! `key=value` config files, merged into the argument list as flags.
//!
//! Keys are flag names without the leading dashes. Blank lines and lines
//! starting with `#` are skipped. `true`/`false` values toggle switches.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use super::{Category, CliError};

/// Switches that take no value.
const SWITCHES: &[&str] = &["emit-plot"];

/// Flags generated from the file at `path`.
pub fn config_args(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(Category::Io, format!("config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::parse(format!("config line {}: expected key=value, got {line:?}", i + 1)))?;
        let (k, v) = (k.trim().trim_start_matches("--"), v.trim());
        if k.is_empty() || k == "config" {
            return Err(CliError::parse(format!("config line {}: invalid key {k:?}", i + 1)));
        }
        if SWITCHES.contains(&k) {
            match v {
                "true" | "1" | "yes" => out.push(format!("--{k}").into()),
                "false" | "0" | "no" => {}
                _ => return Err(CliError::parse(format!("config line {}: {k} expects true or false", i + 1))),
            }
        } else {
            let v = v.trim_matches(|c| c == '"' || c == '\'');
            out.push(format!("--{k}").into());
            out.push(v.into());
        }
    }
    Ok(out)
}

/// Removes `--config` from `args` and splices the file's flags in right
/// after the subcommand, so flags given on the command line (which now come
/// later) take precedence.
pub fn merge(args: Vec<OsString>, subcommands: &[&str]) -> Result<Vec<OsString>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    let prog = it.next();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let p = it.next().ok_or_else(|| CliError::parse("--config needs a path"))?;
            path = Some(p);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(p.into());
        } else {
            rest.push(a);
        }
    }
    let mut out: Vec<OsString> = prog.into_iter().collect();
    let Some(path) = path else {
        out.extend(rest);
        return Ok(out);
    };
    let extra = config_args(Path::new(&path))?;
    let pos = rest.iter().position(|a| subcommands.contains(&a.to_string_lossy().as_ref()));
    match pos {
        Some(i) => {
            let sub = rest.remove(i);
            out.push(sub);
            out.extend(extra);
            out.extend(rest);
        }
        None => {
            out.extend(extra);
            out.extend(rest);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[OsString]) -> Vec<String> {
        v.iter().map(|s| s.to_string_lossy().into_owned()).collect()
    }

    #[test]
    fn lines_become_flags() {
        let a = parse_config("# c\n\nf = (1-x)^0.5*log(1-x)\nN=200\nemit-plot=true\n").unwrap();
        assert_eq!(strs(&a), ["--f", "(1-x)^0.5*log(1-x)", "--N", "200", "--emit-plot"]);
        assert!(parse_config("emit-plot=false\n").unwrap().is_empty());
    }

    #[test]
    fn malformed_lines_are_parse_errors() {
        assert_eq!(parse_config("N 200").unwrap_err().category, Category::Parse);
        assert_eq!(parse_config("emit-plot=maybe").unwrap_err().category, Category::Parse);
        assert_eq!(parse_config("config=x").unwrap_err().category, Category::Parse);
    }

    #[test]
    fn file_flags_precede_command_line_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.cfg");
        fs::write(&p, "N=50\nbasis=legendre\n").unwrap();
        let args: Vec<OsString> = ["singspec", "--threads", "2", "coeffs", "--config", p.to_str().unwrap(), "--N", "7"]
            .iter()
            .map(OsString::from)
            .collect();
        let m = merge(args, &["coeffs"]).unwrap();
        assert_eq!(strs(&m), ["singspec", "coeffs", "--N", "50", "--basis", "legendre", "--threads", "2", "--N", "7"]);
    }

    #[test]
    fn missing_config_is_io() {
        let args = ["singspec", "coeffs", "--config=/nonexistent/x.cfg"].iter().map(OsString::from).collect();
        assert_eq!(merge(args, &["coeffs"]).unwrap_err().category, Category::Io);
    }
}
