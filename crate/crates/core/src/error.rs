//! Error type shared by every module.

use alloc::string::String;
use core::fmt;

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in an exact computation.
///
/// Resource variants carry the bound that was hit so front ends can tell the
/// user which knob to turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The trial-division path was asked for an integer above its bound.
    OracleBoundExceeded {
        /// Decimal rendering of the offending integer.
        value: String,
        /// The configured bound.
        bound: u64,
    },
    /// An enumeration would produce more items than allowed.
    ResourceLimit {
        /// What was being counted.
        what: &'static str,
        /// Decimal rendering of the requested size.
        requested: String,
        /// The configured cap.
        cap: u64,
    },
    /// Every complementary divisor difference is at or below the threshold.
    NoQualifyingPair {
        /// Decimal rendering of the integer.
        value: String,
        /// Decimal rendering of the threshold.
        threshold: String,
    },
    /// The enclosure is too wide to pin down the requested closed-form term.
    InsufficientPrecision {
        /// Index of the term.
        n: u64,
    },
    /// The constraints on `c` have no common point. This would falsify the
    /// closed form for `b_n`.
    EmptyIntersection {
        /// Smallest index whose constraint empties the intersection.
        n: u64,
    },
    /// The explicit circle simulation was asked for too many people.
    SimulationCapExceeded {
        /// Requested circle size.
        n: u64,
        /// The configured cap.
        cap: u64,
    },
    /// An argument violates an operation precondition.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OracleBoundExceeded { value, bound } => write!(
                f,
                "{value} exceeds the trial-division oracle bound {bound}; use the factored path"
            ),
            Error::ResourceLimit {
                what,
                requested,
                cap,
            } => write!(f, "{what} of {requested} exceeds the cap {cap}"),
            Error::NoQualifyingPair { value, threshold } => write!(
                f,
                "no complementary divisor pair of {value} differs by more than {threshold}"
            ),
            Error::InsufficientPrecision { n } => {
                write!(f, "enclosure too wide to determine term {n}")
            }
            Error::EmptyIntersection { n } => {
                write!(f, "enclosure became empty at n = {n}")
            }
            Error::SimulationCapExceeded { n, cap } => {
                write!(f, "simulation of {n} people exceeds the cap {cap}")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
