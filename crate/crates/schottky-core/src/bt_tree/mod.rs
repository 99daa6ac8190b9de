//! The Bruhat-Tits tree of `SL2(Q_p)` at desk scale: canonical vertices,
//! exact distances and geodesics, isometry classification, axes and
//! projections, and the tree-specialized freeness/discreteness check.

mod axis;
mod isometry;
mod relation;
mod schottky;
mod vertex;

use alloc::string::String;
use core::fmt;

use crate::exact_arith::ArithError;

pub use axis::{axis, project, Axis};
pub use isometry::{IsometryClass, TreeIsometry};
pub use relation::{axes_relation, AxisRelation, InapplicableReason};
pub use schottky::{
    pingpong_sets, schottky_check, FootprintInterval, FundamentalDomain, ProjectionSummary,
    RaySide, SchottkyOutcome, SchottkyVerdict, TreePingPong, TreeUniverse,
};
pub use vertex::TreeVertex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    Arith(ArithError),
    /// Tree isometries and lattice bases are 2x2.
    NotTwoByTwo(usize),
    MixedPrimes(u64, u64),
    /// Odd determinant valuation: the isometry swaps vertex types.
    TypeSwapping { det_valuation: i64 },
    /// An axis was requested for an elliptic isometry.
    NotHyperbolic,
    /// A generator handed to the criterion is elliptic.
    EllipticGenerator { index: usize },
    TooFewGenerators(usize),
    DomainCountMismatch { axes: usize, domains: usize },
    /// A fundamental domain's length differs from the translation length.
    DomainLengthMismatch { index: usize },
    /// A should-never-happen inconsistency; callers treat this as a bug.
    Internal(String),
}

impl TreeError {
    pub(crate) fn internal(message: &str) -> Self {
        TreeError::Internal(String::from(message))
    }
}

impl From<ArithError> for TreeError {
    fn from(e: ArithError) -> Self {
        TreeError::Arith(e)
    }
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Arith(e) => write!(f, "{e}"),
            TreeError::NotTwoByTwo(d) => write!(f, "expected a 2x2 matrix, got {d}x{d}"),
            TreeError::MixedPrimes(a, b) => write!(f, "mixed primes: {a} and {b}"),
            TreeError::TypeSwapping { det_valuation } => write!(
                f,
                "type-swapping isometry unsupported (determinant valuation {det_valuation} is odd)"
            ),
            TreeError::NotHyperbolic => write!(f, "isometry is elliptic and has no axis"),
            TreeError::EllipticGenerator { index } => write!(
                f,
                "generator {} is elliptic; the criterion needs hyperbolic generators",
                index + 1
            ),
            TreeError::TooFewGenerators(n) => {
                write!(f, "need at least 2 generators, got {n}")
            }
            TreeError::DomainCountMismatch { axes, domains } => {
                write!(f, "{domains} fundamental domains supplied for {axes} axes")
            }
            TreeError::DomainLengthMismatch { index } => write!(
                f,
                "fundamental domain {index} does not have length equal to the translation length"
            ),
            TreeError::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}
