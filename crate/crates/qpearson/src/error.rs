//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in exact computations.
///
/// Check *failures* (a residual that should vanish but does not) are not
/// errors; they are reported through [`crate::report`] types. Errors are
/// violated preconditions: division by zero, mixed scalar modes, moment
/// vectors that are too shallow, and so on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// Division by the zero scalar, or a zero denominator in a literal.
    DivisionByZero,
    /// Arithmetic between a rational-mode and a symbolic-mode scalar.
    ModeMismatch,
    /// `0^e` with a negative exponent.
    ZeroToNegativePower,
    /// Specialization `t = t0` hit a pole of a denominator.
    PoleAtSpecialization,
    /// Syntax error in a scalar/polynomial literal, with byte position.
    Parse { pos: usize, msg: String },
    /// Exact polynomial division left a remainder (canonical text form).
    InexactDivision { remainder: String },
    /// A linear form was evaluated past its valid degree.
    DepthExceeded { needed: usize, have: usize },
    /// A recurrence coefficient `C_n` vanishes: the family is not regular
    /// to the requested depth.
    ZeroRecurrenceCoefficient { n: usize },
    /// Gram-Schmidt hit a vanishing norm: form not regular to depth `n`.
    NotRegular { n: usize },
    /// A context parameter is outside its allowed set (`q` in {0, 1, -1},
    /// zero `t`, ...).
    InvalidContext { msg: String },
    /// A construction produced the zero polynomial where a nonzero one is
    /// required (degenerate Pearson pair, vanishing `R_s`, ...).
    Degenerate { msg: String },
    /// `deg gcd(Phi, Psi) > s - 1`: contradicts the band theorem, which
    /// signals an upstream bug rather than a property of the input.
    TheoremViolation { msg: String },
    /// Input data violates a stated hypothesis (named check).
    Precondition { msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ModeMismatch => write!(f, "scalar mode mismatch (rational vs symbolic)"),
            Error::ZeroToNegativePower => write!(f, "zero raised to a negative power"),
            Error::PoleAtSpecialization => write!(f, "specialization hits a pole"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::InexactDivision { remainder } => {
                write!(f, "inexact polynomial division, remainder {remainder}")
            }
            Error::DepthExceeded { needed, have } => write!(
                f,
                "moment depth exceeded: need valid degree {needed}, have {have}"
            ),
            Error::ZeroRecurrenceCoefficient { n } => {
                write!(f, "recurrence coefficient C_{n} is zero (regularity violation)")
            }
            Error::NotRegular { n } => {
                write!(f, "form not regular to requested depth: vanishing norm at n = {n}")
            }
            Error::InvalidContext { msg } => write!(f, "invalid context: {msg}"),
            Error::Degenerate { msg } => write!(f, "degenerate construction: {msg}"),
            Error::TheoremViolation { msg } => write!(f, "theorem violation: {msg}"),
            Error::Precondition { msg } => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
