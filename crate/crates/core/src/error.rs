use std::fmt;

use thiserror::Error;

/// Birack/biquandle axiom names used in violation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// R is a bijection of X × X.
    Invertible,
    /// R1(a, -) is a bijection for every a.
    LeftInvertible,
    /// R2(-, b) is a bijection for every b.
    RightInvertible,
    /// Set-theoretic Yang-Baxter equation.
    YangBaxter,
    /// Unique fixpoint pairs (x_a, a) and (a, y_a).
    TypeOne,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Invertible => "R invertible",
            Axiom::LeftInvertible => "R1 left-invertible",
            Axiom::RightInvertible => "R2 right-invertible",
            Axiom::YangBaxter => "set-theoretic Yang-Baxter equation",
            Axiom::TypeOne => "type I condition",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at token {index} ({token:?}): {message}")]
    Parse {
        index: usize,
        token: String,
        message: String,
    },
    #[error("invalid Gauss code: {0}")]
    InvalidGaussCode(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("axiom violated ({axiom}) at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown corpus entry {0:?}")]
    UnknownEntry(String),
}

impl Error {
    pub(crate) fn parse(index: usize, token: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            index,
            token: token.to_string(),
            message: message.into(),
        }
    }

    /// True for errors caused by malformed textual input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidGaussCode(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
