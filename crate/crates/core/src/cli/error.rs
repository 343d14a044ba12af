use std::fmt;

use crate::asymp::AsympError;
use crate::descr::ParseError;
use crate::expand::ExpandError;
use crate::quad::QuadError;
use crate::specfun::SpecFunError;

/// Error categories and their process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Parse,
    Hypothesis,
    Convergence,
    Io,
    InsufficientData,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Parse => 2,
            Category::Hypothesis => 3,
            Category::Convergence => 4,
            Category::Io => 5,
            Category::InsufficientData => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Parse => "parse",
            Category::Hypothesis => "hypothesis",
            Category::Convergence => "convergence",
            Category::Io => "io",
            Category::InsufficientData => "insufficient-data",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    pub fn new(category: Category, message: impl Into<String>) -> Self {
        Self { category, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(Category::Parse, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error category={} code={}: {}", self.category.name(), self.category.exit_code(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::new(Category::Parse, e.to_string())
    }
}

impl From<ExpandError> for CliError {
    fn from(e: ExpandError) -> Self {
        let c = match &e {
            ExpandError::NotInL2w(_)
            | ExpandError::NotInSobolev(_)
            | ExpandError::InvalidFunction(_)
            | ExpandError::InvalidBasis(_)
            | ExpandError::BasisMismatch(_) => Category::Hypothesis,
            ExpandError::NoConvergence(q) => return Self::from(q.clone()),
            ExpandError::TailDominates { .. } => Category::Convergence,
            ExpandError::LengthError(_) => Category::Parse,
        };
        Self::new(c, e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        let c = match &e {
            QuadError::NoConvergence { .. } => Category::Convergence,
            QuadError::InvalidSpec(_) => Category::Hypothesis,
            QuadError::Size { .. } | QuadError::Interval { .. } | QuadError::Tolerance(_) => Category::Parse,
        };
        Self::new(c, e.to_string())
    }
}

impl From<AsympError> for CliError {
    fn from(e: AsympError) -> Self {
        let c = match &e {
            AsympError::HypothesisViolated(_) | AsympError::OutsideValidity(_) => Category::Hypothesis,
            AsympError::InsufficientData { .. } => Category::InsufficientData,
            AsympError::InvalidWindow { .. } => Category::Parse,
        };
        Self::new(c, e.to_string())
    }
}

impl From<SpecFunError> for CliError {
    fn from(e: SpecFunError) -> Self {
        Self::new(Category::Hypothesis, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(Category::Io, e.to_string())
    }
}
