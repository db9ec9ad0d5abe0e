use core::fmt;

/// Errors produced by trajectory construction, queries and analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates its documented domain.
    InvalidArgument(&'static str),
    /// The strategy variant requires the other parity of `p`.
    ParityMismatch { p: u32, expected_odd: bool },
    /// A time query fell outside `[0, end]` of the trajectory.
    OutOfRange { t: f64, end: f64 },
    /// A segment list does not describe a legal trajectory.
    InvalidSegment { index: usize, reason: &'static str },
    /// A target is not explored within the generated rounds.
    InsufficientHorizon { target: f64 },
    /// The trace never reaches `x = 1`, so no witness sequence exists.
    NeverReachesOne,
    /// Island growth cannot be attributed to a single side.
    AmbiguousSide { period: usize },
    /// A witness sequence violates its structural invariants.
    MalformedWitness { index: usize, reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::ParityMismatch { p, expected_odd } => {
                let want = if *expected_odd { "odd" } else { "even" };
                write!(
                    f,
                    "p = {p} has the wrong parity, this variant needs {want} p"
                )
            }
            Error::OutOfRange { t, end } => {
                write!(f, "time {t} is outside the trajectory span [0, {end}]")
            }
            Error::InvalidSegment { index, reason } => {
                write!(f, "segment {index}: {reason}")
            }
            Error::InsufficientHorizon { target } => {
                write!(
                    f,
                    "target {target} is not explored within the trajectory horizon"
                )
            }
            Error::NeverReachesOne => f.write_str("trajectory never reaches x = 1"),
            Error::AmbiguousSide { period } => write!(
                f,
                "cannot attribute island growth to one side at the end of period {period}"
            ),
            Error::MalformedWitness { index, reason } => {
                write!(f, "witness index {index}: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
