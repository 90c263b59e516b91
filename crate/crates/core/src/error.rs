//! Crate-wide error type.
//!
//! Validation failures carry enough context to name the offending object
//! (atom index, level pair, ...) so that front ends can report precisely.
//! Stable machine-readable codes (`NESTING_VIOLATION`, `LEVEL_RANGE`,
//! `NOT_A_SELECTION`, `NULL_SET`) lead the corresponding display strings.

use alloc::string::String;
use core::fmt;

/// Everything fallible in this crate returns this.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must live in the same ambient space do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A polytope needs at least one vertex.
    EmptyBody,
    /// A coordinate, weight or scalar was NaN or infinite.
    NonFinite,
    /// A direction cannot be the zero vector.
    ZeroDirection,
    /// A `Direction` must have unit Euclidean norm.
    NotUnit { norm: f64 },
    /// A direction grid must contain the negation of each member.
    AsymmetricGrid { index: usize },
    /// A direction grid must span the ambient space.
    DegenerateGrid,
    /// A direction grid must not repeat directions.
    DuplicateDirection { first: usize, second: usize },
    /// Tolerances must be strictly positive and finite.
    BadTolerance { value: f64 },
    /// The nearest-point solver hit its iteration cap (ill-conditioning).
    NoConvergence { iterations: usize },
    /// A membership level lies outside `(0, 1]`.
    LevelRange { value: f64 },
    /// The top stored level of a level family must be exactly 1.
    LastLevelNotOne { value: f64 },
    /// Stored levels must be strictly increasing.
    LevelsNotIncreasing { index: usize },
    /// A level family pairs each level with one body.
    LevelCountMismatch { levels: usize, bodies: usize },
    /// Level sets must be nested: the body at the higher level is not
    /// contained in the body at the next lower level.
    NestingViolation { lower_index: usize, upper_index: usize },
    /// An atom index is out of range for the measure space.
    AtomIndexOutOfRange { index: usize, atoms: usize },
    /// Atom weights must be nonnegative.
    NegativeWeight { index: usize },
    /// Atom identifiers must be distinct.
    DuplicateAtomId { id: String },
    /// A fuzzy mapping assigns exactly one value per atom.
    ValueCountMismatch { atoms: usize, values: usize },
    /// The two mappings do not share the same measure space.
    SpaceMismatch,
    /// A claimed selection leaves its level set at some atom.
    NotASelection { atom: usize },
    /// The requested set has measure zero, so the conditional object
    /// (core / expectation) is undefined.
    NullSet,
    /// Dominance fails: the first mapping leaves the second at some atom.
    NotDominated { atom: usize },
    /// An input parameter violated a documented precondition.
    BadParameter(&'static str),
    /// A sampling grid does not cover the sets it is asked to probe.
    CoverageViolation,
    /// A brute-force oracle was asked to exceed its size guard.
    InstanceTooLarge { limit: usize, found: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyBody => write!(f, "a convex body needs at least one vertex"),
            Error::NonFinite => write!(f, "non-finite coordinate, weight or scalar"),
            Error::ZeroDirection => write!(f, "direction must be a nonzero vector"),
            Error::NotUnit { norm } => {
                write!(f, "direction must have unit norm (got {norm})")
            }
            Error::AsymmetricGrid { index } => {
                write!(f, "direction grid is not antipodally symmetric at index {index}")
            }
            Error::DegenerateGrid => write!(f, "direction grid does not span the space"),
            Error::DuplicateDirection { first, second } => {
                write!(f, "direction grid repeats a direction (indices {first} and {second})")
            }
            Error::BadTolerance { value } => {
                write!(f, "tolerance must be strictly positive and finite (got {value})")
            }
            Error::NoConvergence { iterations } => {
                write!(f, "nearest-point solver did not converge within {iterations} iterations")
            }
            Error::LevelRange { value } => {
                write!(f, "LEVEL_RANGE: membership level {value} lies outside (0, 1]")
            }
            Error::LastLevelNotOne { value } => {
                write!(f, "LEVEL_RANGE: top stored level must be 1 (got {value})")
            }
            Error::LevelsNotIncreasing { index } => {
                write!(f, "LEVEL_RANGE: levels must be strictly increasing (violated at index {index})")
            }
            Error::LevelCountMismatch { levels, bodies } => {
                write!(f, "level family pairs {levels} levels with {bodies} bodies")
            }
            Error::NestingViolation { lower_index, upper_index } => {
                write!(
                    f,
                    "NESTING_VIOLATION: level set at index {upper_index} is not contained in the one at index {lower_index}"
                )
            }
            Error::AtomIndexOutOfRange { index, atoms } => {
                write!(f, "atom index {index} out of range for a space with {atoms} atoms")
            }
            Error::NegativeWeight { index } => {
                write!(f, "atom weight at index {index} is negative")
            }
            Error::DuplicateAtomId { id } => write!(f, "duplicate atom id {id:?}"),
            Error::ValueCountMismatch { atoms, values } => {
                write!(f, "mapping assigns {values} values to {atoms} atoms")
            }
            Error::SpaceMismatch => {
                write!(f, "mappings are defined on different measure spaces")
            }
            Error::NotASelection { atom } => {
                write!(f, "NOT_A_SELECTION: point at atom {atom} leaves its level set")
            }
            Error::NullSet => write!(f, "NULL_SET: the set has measure zero"),
            Error::NotDominated { atom } => {
                write!(f, "dominance fails at atom {atom}")
            }
            Error::BadParameter(what) => write!(f, "bad parameter: {what}"),
            Error::CoverageViolation => {
                write!(f, "sampling grid does not cover the target sets")
            }
            Error::InstanceTooLarge { limit, found } => {
                write!(f, "oracle size guard exceeded: limit {limit}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
