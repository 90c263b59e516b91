//! Level-set fuzzy numbers over exact convex polytopes, and their set-valued
//! (Pettis-style) integrals on finite measure spaces.
//!
//! Everything is built on polytopes in vertex representation, where support
//! functions, Minkowski sums and scalar images are exact up to floating-point
//! rounding. That exactness is the point: the structural identities of
//! level-wise integration (support additivity, decomposition into a selection
//! plus a nonnegative remainder, set-function additivity) can then be
//! *checked numerically* instead of being assumed.
//!
//! - [`convexgeom`] — the polytope kernel: support functions, Minkowski
//!   arithmetic, nearest-point distances, Hausdorff metric, extreme-point
//!   selections.
//! - [`fuzzynum`] — fuzzy numbers as finite nested families of level sets
//!   with right-closed step semantics.
//! - [`measurespace`] — finite atomic measure spaces, measurable sets and
//!   fuzzy-set-valued mappings on them.
//! - [`integral`] — the level-wise set-valued integral plus the verification
//!   suite (measure properties, decomposition, linearity, cores).
//! - [`oracle`] — independent brute-force references (dense sampling,
//!   simplex enumeration) used to cross-check the kernel.
//!
//! The crate is `no_std`-compatible (`alloc` required); enable the `libm`
//! feature to supply scalar math when `std` is off.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("fuzzpettis-core needs either the `std` or the `libm` feature for scalar math");

pub mod convexgeom;
pub mod error;
mod float;
pub mod fuzzynum;
pub mod integral;
pub mod measurespace;
pub mod oracle;
pub(crate) mod vecmath;

pub use convexgeom::{ConvexBody, Direction, DirectionGrid, Point};
pub use error::{Error, Result};
pub use fuzzynum::{FuzzyNumber, Grade};
pub use integral::IntegralConfig;
pub use measurespace::{FiniteMeasureSpace, FuzzyMapping, MeasurableSet, Selection};

/// Default tolerance for nearest-point solves (squared-gap stopping rule).
pub const DEFAULT_SOLVER_TOL: f64 = 1e-9;
/// Default tolerance for support-function identities and integral residuals.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-9;
/// Default tolerance for exact per-vertex geometric identities.
pub const DEFAULT_GEOMETRY_TOL: f64 = 1e-12;
/// Iteration cap for the nearest-point solver; hitting it is an error.
pub const DEFAULT_MAX_ITER: usize = 10_000;
