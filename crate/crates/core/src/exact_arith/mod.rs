//! Exact rationals, quadratic-field numbers and outward-rounded intervals.

pub mod dyadic;
pub mod interval;
pub mod quadratic;
pub mod rational;

pub use dyadic::{Dyadic, Round};
pub use interval::{Interval, Sign, DEFAULT_PRECISION};
pub use quadratic::QuadraticNumber;
pub use rational::{format_rational, int, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor enclosure contains zero")]
    DivisorContainsZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interval endpoints out of order")]
    InvertedInterval,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("mismatched radicands √{left} and √{right}")]
    MismatchedRadicand { left: String, right: String },
    #[error("cannot parse {0:?}")]
    Parse(String),
}
