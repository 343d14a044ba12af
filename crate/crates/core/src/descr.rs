//! Function descriptors: a small product grammar for singular functions.
//!
//! ```text
//! expr    := factor ('*' factor)*
//! factor  := alg | logf | smooth
//! alg     := '(1-x)^' num | '(1+x)^' num | '|x-' num '|^' num
//! logf    := 'log' ('^' int)? ( '(1-x)' | '(1+x)' | '(1-x^2)' | '|x-' num '|' )
//! smooth  := 'sin(x)' | 'cos(x)' | 'exp(x)' | 'poly(' num (',' num)* ')'
//! ```
//!
//! Whitespace is ignored everywhere. `log` is the natural logarithm.

use std::fmt;

use thiserror::Error;

use crate::expand::{ExpandError, SingularFactor, SingularFunction, Site, SmoothTerm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DescrSite {
    Right,
    Left,
    Interior(f64),
}

impl DescrSite {
    fn site(self) -> Site {
        match self {
            DescrSite::Right => Site::RightEndpoint,
            DescrSite::Left => Site::LeftEndpoint,
            DescrSite::Interior(z) => Site::Interior(z),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Smooth {
    Sin,
    Cos,
    Exp,
    Poly(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Alg { site: DescrSite, exponent: f64 },
    Log { site: DescrSite, power: u32 },
    /// `log^power(1-x^2)`
    LogOneMinusX2 { power: u32 },
    Smooth(Smooth),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at byte {offset}: {}", describe(.expected, .detail))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub detail: Option<String>,
}

fn describe(expected: &[&'static str], detail: &Option<String>) -> String {
    match detail {
        Some(d) => d.clone(),
        None => format!("expected one of {}", expected.join(", ")),
    }
}

/// Source text with its factor list.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub source: String,
    pub ast: Vec<Factor>,
    offsets: Vec<usize>,
}

impl Descriptor {
    pub fn parse(source: &str) -> Result<Self, ParseError> {
        let (ast, offsets) = Parser { src: source.as_bytes(), pos: 0 }.expr()?.into_iter().unzip();
        let d = Self { source: source.to_string(), ast, offsets };
        d.build()?;
        Ok(d)
    }

    /// Fuses the factors into a function: shared sites add exponents and log
    /// powers, smooth factors multiply into `g`.
    pub fn function(&self) -> SingularFunction {
        self.build().expect("validated at parse time")
    }

    fn build(&self) -> Result<SingularFunction, ParseError> {
        let mut f = SingularFunction::one();
        for (fac, &offset) in self.ast.iter().zip(&self.offsets) {
            let r: Result<SingularFunction, ExpandError> = match fac {
                Factor::Alg { site, exponent } => {
                    SingularFactor::new(site.site(), *exponent, 0).and_then(|g| f.clone().times_factor(g))
                }
                Factor::Log { site, power } => {
                    SingularFactor::new(site.site(), 0.0, *power).and_then(|g| f.clone().times_factor(g))
                }
                Factor::LogOneMinusX2 { power } => Ok(f.clone().times_log_one_minus_x2(*power)),
                Factor::Smooth(s) => Ok(f.clone().times_smooth(match s {
                    Smooth::Sin => SmoothTerm::Sin,
                    Smooth::Cos => SmoothTerm::Cos,
                    Smooth::Exp => SmoothTerm::Exp,
                    Smooth::Poly(c) => SmoothTerm::Poly(c.clone()),
                })),
            };
            f = r.map_err(|e| ParseError { offset, expected: vec![], detail: Some(e.to_string()) })?;
        }
        Ok(f)
    }
}

/// Parses a descriptor straight into a function.
pub fn parse(source: &str) -> Result<SingularFunction, ParseError> {
    Ok(Descriptor::parse(source)?.function())
}

/// Canonical text of a factor list; parses back to the same list.
pub fn format(ast: &[Factor]) -> String {
    ast.iter().map(format_factor).collect::<Vec<_>>().join("*")
}

fn format_factor(f: &Factor) -> String {
    let site = |s: &DescrSite| match s {
        DescrSite::Right => "(1-x)".to_string(),
        DescrSite::Left => "(1+x)".to_string(),
        DescrSite::Interior(z) => format!("|x-{z}|"),
    };
    let pow = |p: u32| if p == 1 { String::new() } else { format!("^{p}") };
    match f {
        Factor::Alg { site: s, exponent } => format!("{}^{exponent}", site(s)),
        Factor::Log { site: s, power } => format!("log{}{}", pow(*power), site(s)),
        Factor::LogOneMinusX2 { power } => format!("log{}(1-x^2)", pow(*power)),
        Factor::Smooth(Smooth::Sin) => "sin(x)".into(),
        Factor::Smooth(Smooth::Cos) => "cos(x)".into(),
        Factor::Smooth(Smooth::Exp) => "exp(x)".into(),
        Factor::Smooth(Smooth::Poly(c)) => {
            format!("poly({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.ast))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos.min(self.src.len()), expected: expected.to_vec(), detail: None })
    }

    /// Matches `lit` character by character, whitespace allowed in between.
    fn eat(&mut self, lit: &str) -> bool {
        let save = self.pos;
        for &c in lit.as_bytes() {
            if self.peek() != Some(c) {
                self.pos = save;
                return false;
            }
            self.pos += 1;
        }
        true
    }

    fn expect(&mut self, lit: &'static str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(&[lit])
        }
    }

    fn located_factor(&mut self) -> Result<(Factor, usize), ParseError> {
        self.skip_ws();
        let at = self.pos;
        Ok((self.factor()?, at))
    }

    fn expr(&mut self) -> Result<Vec<(Factor, usize)>, ParseError> {
        let mut out = vec![self.located_factor()?];
        loop {
            match self.peek() {
                None => return Ok(out),
                Some(b'*') => {
                    self.pos += 1;
                    out.push(self.located_factor()?);
                }
                Some(_) => return self.err(&["*", "end of input"]),
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        const FACTORS: &[&str] = &["(1-x)^", "(1+x)^", "|x-", "log", "sin(x)", "cos(x)", "exp(x)", "poly("];
        if self.eat("log") {
            return self.log_factor();
        }
        for (lit, s) in [("sin(x)", Smooth::Sin), ("cos(x)", Smooth::Cos), ("exp(x)", Smooth::Exp)] {
            if self.eat(lit) {
                return Ok(Factor::Smooth(s));
            }
        }
        if self.eat("poly(") {
            let mut c = vec![self.num()?];
            while self.eat(",") {
                c.push(self.num()?);
            }
            self.expect(")")?;
            return Ok(Factor::Smooth(Smooth::Poly(c)));
        }
        let site = match self.site()? {
            Some(s) => s,
            None => return self.err(FACTORS),
        };
        self.expect("^")?;
        Ok(Factor::Alg { site, exponent: self.num()? })
    }

    fn log_factor(&mut self) -> Result<Factor, ParseError> {
        let power = if self.eat("^") { self.int()? } else { 1 };
        if self.eat("(1-x^2)") {
            return Ok(Factor::LogOneMinusX2 { power });
        }
        match self.site()? {
            Some(site) => Ok(Factor::Log { site, power }),
            None => self.err(&["(1-x)", "(1+x)", "(1-x^2)", "|x-"]),
        }
    }

    /// `(1-x)`, `(1+x)` or `|x-z|`.
    fn site(&mut self) -> Result<Option<DescrSite>, ParseError> {
        if self.eat("(1-x)") {
            return Ok(Some(DescrSite::Right));
        }
        if self.eat("(1+x)") {
            return Ok(Some(DescrSite::Left));
        }
        if self.eat("|x-") {
            let start = self.pos;
            let z = self.num()?;
            if !(z > -1.0 && z < 1.0) {
                return Err(ParseError {
                    offset: start,
                    expected: vec![],
                    detail: Some(format!(
                        "interior point {z} must lie strictly inside (-1, 1); use (1-x) or (1+x) at the endpoints"
                    )),
                });
            }
            self.expect("|")?;
            return Ok(Some(DescrSite::Interior(z)));
        }
        Ok(None)
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| ParseError { offset: start, expected: vec!["integer"], detail: None })
    }

    fn num(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let at = |p: usize| self.src.get(p).copied();
        let mut p = start;
        if matches!(at(p), Some(b'+' | b'-')) {
            p += 1;
        }
        let digits = |mut p: usize| {
            let s = p;
            while matches!(at(p), Some(b'0'..=b'9')) {
                p += 1;
            }
            (p, p - s)
        };
        let (q, int_digits) = digits(p);
        p = q;
        let mut frac_digits = 0;
        if at(p) == Some(b'.') {
            let (q, n) = digits(p + 1);
            p = q;
            frac_digits = n;
        }
        if int_digits + frac_digits == 0 {
            return Err(ParseError { offset: start, expected: vec!["number"], detail: None });
        }
        if matches!(at(p), Some(b'e' | b'E')) {
            let mut q = p + 1;
            if matches!(at(q), Some(b'+' | b'-')) {
                q += 1;
            }
            let (r, n) = digits(q);
            if n > 0 {
                p = r;
            }
        }
        let text = std::str::from_utf8(&self.src[start..p]).expect("ascii number");
        self.pos = p;
        text.parse().map_err(|_| ParseError { offset: start, expected: vec!["number"], detail: None })
    }
}
