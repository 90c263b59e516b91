//! Fuzzy numbers as finite nested families of level sets.
//!
//! A generalized fuzzy number is stored as strictly increasing membership
//! levels `0 < r₁ < … < r_m = 1` paired with convex bodies
//! `C₁ ⊇ C₂ ⊇ … ⊇ C_m`. The membership function is the right-closed step
//! function this family generates: the grade of `x` is the largest stored
//! level whose body contains `x` (zero if none), and the level cut at
//! `r ∈ (r_{i-1}, r_i]` is `C_i` — equivalently, the body at the smallest
//! stored level ≥ `r`. Level 0 is deliberately excluded: the 0-cut would be
//! the whole space, which a bounded polytope cannot represent.
//!
//! Arithmetic is level-wise on the merged level grid:
//! `[u ⊕ v]^r = [u]^r ⊕ [v]^r` and `[k·u]^r = k·[u]^r`. For convex level
//! sets this matches the sup–min (extension-principle) arithmetic; the
//! brute-force cross-check lives in [`crate::oracle`].

use alloc::vec;
use alloc::vec::Vec;

use crate::convexgeom::{ConvexBody, Point};
use crate::error::{Error, Result};
use crate::DEFAULT_SOLVER_TOL;

/// A membership grade in `[0, 1]`.
///
/// For a stored level family the attainable grades are exactly `0` and the
/// stored levels; the type itself only enforces the range.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Grade(f64);

impl Grade {
    /// Full membership.
    pub const ONE: Grade = Grade(1.0);
    /// No membership.
    pub const ZERO: Grade = Grade(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::LevelRange { value });
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A generalized fuzzy number: nested level sets under right-closed step
/// semantics. See the module docs for the exact conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    levels: Vec<f64>,
    bodies: Vec<ConvexBody>,
}

impl FuzzyNumber {
    /// Validating constructor: levels strictly increasing in `(0, 1]` with
    /// the top level exactly 1, one body per level, all bodies in the same
    /// space, and each body contained in its predecessor (checked within
    /// the default solver tolerance). Nesting is asserted, not assumed —
    /// violations surface as [`Error::NestingViolation`].
    pub fn from_level_family(levels: Vec<f64>, bodies: Vec<ConvexBody>) -> Result<Self> {
        if levels.len() != bodies.len() {
            return Err(Error::LevelCountMismatch { levels: levels.len(), bodies: bodies.len() });
        }
        if levels.is_empty() {
            return Err(Error::LevelCountMismatch { levels: 0, bodies: 0 });
        }
        for &r in &levels {
            if !r.is_finite() || !(0.0 < r && r <= 1.0) {
                return Err(Error::LevelRange { value: r });
            }
        }
        for i in 1..levels.len() {
            if levels[i] <= levels[i - 1] {
                return Err(Error::LevelsNotIncreasing { index: i });
            }
        }
        let last = *levels.last().expect("nonempty");
        if last != 1.0 {
            return Err(Error::LastLevelNotOne { value: last });
        }
        let dims = bodies[0].dims();
        for b in &bodies {
            if b.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: b.dims() });
            }
        }
        for i in 1..bodies.len() {
            if !bodies[i].subset_of(&bodies[i - 1], DEFAULT_SOLVER_TOL)? {
                return Err(Error::NestingViolation { lower_index: i - 1, upper_index: i });
            }
        }
        Ok(Self { levels, bodies })
    }

    /// Constructor for results whose nesting is inherited from the
    /// operands (level-wise sums, scalar images, translates, prunes), where
    /// re-checking would only re-measure rounding noise.
    pub(crate) fn from_parts_unchecked(levels: Vec<f64>, bodies: Vec<ConvexBody>) -> Self {
        debug_assert_eq!(levels.len(), bodies.len());
        debug_assert!(!levels.is_empty());
        Self { levels, bodies }
    }

    /// The crisp point `χ_{x}`: one level (1) whose body is `{x}`.
    pub fn from_point(point: Point) -> Result<Self> {
        let body = ConvexBody::singleton(point)?;
        Ok(Self { levels: vec![1.0], bodies: vec![body] })
    }

    /// The zero element `θ = χ_{0}` of level-wise addition.
    pub fn null(dims: usize) -> Result<Self> {
        Ok(Self { levels: vec![1.0], bodies: vec![ConvexBody::origin(dims)?] })
    }

    pub fn dims(&self) -> usize {
        self.bodies[0].dims()
    }

    /// Stored levels, strictly increasing, ending at 1.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Stored level bodies, outermost first.
    pub fn bodies(&self) -> &[ConvexBody] {
        &self.bodies
    }

    /// The level cut `[u]^r` for `r ∈ (0, 1]`: the body at the smallest
    /// stored level ≥ `r`. Constant on each interval `(r_{i-1}, r_i]`.
    pub fn level_cut(&self, r: f64) -> Result<&ConvexBody> {
        if !r.is_finite() || !(0.0 < r && r <= 1.0) {
            return Err(Error::LevelRange { value: r });
        }
        for (i, &level) in self.levels.iter().enumerate() {
            if level >= r {
                return Ok(&self.bodies[i]);
            }
        }
        unreachable!("top level is 1, so some stored level is >= r")
    }

    /// Membership grade of `x`: the largest stored level whose body
    /// contains `x` within `tol`, or zero.
    pub fn membership(&self, x: &[f64], tol: f64) -> Result<Grade> {
        if x.len() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: x.len() });
        }
        for i in (0..self.levels.len()).rev() {
            if self.bodies[i].contains(x, tol)? {
                return Grade::new(self.levels[i]);
            }
        }
        Ok(Grade::ZERO)
    }

    /// Level-wise sum on the merged level grid:
    /// `[self ⊕ other]^r = [self]^r ⊕ [other]^r`. Nesting of the result is
    /// inherited (Minkowski sums of nested families are nested).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dims() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: other.dims() });
        }
        let levels = merge_levels(&self.levels, &other.levels);
        let mut bodies = Vec::with_capacity(levels.len());
        for &r in &levels {
            bodies.push(self.level_cut(r)?.minkowski_add(other.level_cut(r)?)?);
        }
        Ok(Self::from_parts_unchecked(levels, bodies))
    }

    /// Level-wise scalar image `[k·u]^r = k·[u]^r`. Scaling by zero
    /// collapses to the canonical `θ` (single level, body `{0}`).
    pub fn scale(&self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite);
        }
        if k == 0.0 {
            return Self::null(self.dims());
        }
        let bodies: Result<Vec<ConvexBody>> = self.bodies.iter().map(|b| b.scale(k)).collect();
        Ok(Self::from_parts_unchecked(self.levels.clone(), bodies?))
    }

    /// Level-wise Hausdorff distance: the max over the merged level grid of
    /// the Hausdorff distance between level cuts. Zero exactly when the two
    /// numbers have hull-equal cuts at every level.
    pub fn hausdorff(&self, other: &Self, tol: f64) -> Result<f64> {
        if other.dims() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: other.dims() });
        }
        let levels = merge_levels(&self.levels, &other.levels);
        let mut worst = 0.0f64;
        for &r in &levels {
            let d = self.level_cut(r)?.hausdorff(other.level_cut(r)?, tol)?;
            worst = f64::max(worst, d);
        }
        Ok(worst)
    }

    /// Hull-preserving cleanup of every level body (see
    /// [`ConvexBody::pruned`]); keeps repeated level-wise sums tractable.
    pub fn pruned(&self, tol: f64) -> Result<Self> {
        let bodies: Result<Vec<ConvexBody>> = self.bodies.iter().map(|b| b.pruned(tol)).collect();
        Ok(Self::from_parts_unchecked(self.levels.clone(), bodies?))
    }
}

/// Sorted union of two stored level grids (both end at 1, so the result
/// does too). Exact float comparison is intended: levels that coincide do
/// so by construction, not by approximation.
pub(crate) fn merge_levels(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut merged: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    merged.sort_by(|x, y| x.partial_cmp(y).expect("levels are finite"));
    merged.dedup();
    merged
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexgeom::Direction;
    use crate::float;
    use alloc::vec;

    fn interval(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::new(1, vec![vec![lo], vec![hi]]).unwrap()
    }

    /// Two-level fuzzy interval: level `r0` cut `[a0, b0]`, level 1 cut `[a1, b1]`.
    fn fuzzy_interval(r0: f64, a0: f64, b0: f64, a1: f64, b1: f64) -> FuzzyNumber {
        FuzzyNumber::from_level_family(
            vec![r0, 1.0],
            vec![interval(a0, b0), interval(a1, b1)],
        )
        .unwrap()
    }

    fn sup(a: &FuzzyNumber, r: f64) -> f64 {
        a.level_cut(r).unwrap().support(&Direction::axis(1, 0).unwrap()).unwrap()
    }

    fn inf(a: &FuzzyNumber, r: f64) -> f64 {
        -a.level_cut(r)
            .unwrap()
            .support(&Direction::axis(1, 0).unwrap().negated())
            .unwrap()
    }

    #[test]
    fn grades_are_clamped_to_the_unit_interval() {
        assert!(Grade::new(0.5).is_ok());
        assert_eq!(Grade::ONE.value(), 1.0);
        assert_eq!(Grade::ZERO.value(), 0.0);
        assert!(matches!(Grade::new(1.5), Err(Error::LevelRange { .. })));
        assert!(matches!(Grade::new(-0.1), Err(Error::LevelRange { .. })));
        assert!(matches!(Grade::new(f64::NAN), Err(Error::LevelRange { .. })));
    }

    #[test]
    fn family_validation_catches_structural_errors() {
        // Last level must be exactly 1.
        assert!(matches!(
            FuzzyNumber::from_level_family(vec![0.5], vec![interval(0.0, 1.0)]),
            Err(Error::LastLevelNotOne { .. })
        ));
        // Levels strictly increasing.
        assert!(matches!(
            FuzzyNumber::from_level_family(
                vec![0.5, 0.5, 1.0],
                vec![interval(0.0, 3.0), interval(0.0, 2.0), interval(0.0, 1.0)]
            ),
            Err(Error::LevelsNotIncreasing { .. })
        ));
        // Levels must lie in (0, 1].
        assert!(matches!(
            FuzzyNumber::from_level_family(
                vec![0.0, 1.0],
                vec![interval(0.0, 2.0), interval(0.0, 1.0)]
            ),
            Err(Error::LevelRange { .. })
        ));
        // One body per level.
        assert!(matches!(
            FuzzyNumber::from_level_family(vec![1.0], vec![]),
            Err(Error::LevelCountMismatch { .. })
        ));
        // Bodies must share a dimension.
        assert!(matches!(
            FuzzyNumber::from_level_family(
                vec![0.5, 1.0],
                vec![interval(0.0, 2.0), ConvexBody::singleton(vec![0.0, 0.0]).unwrap()]
            ),
            Err(Error::DimensionMismatch { .. })
        ));
        // Higher cuts must nest inside lower ones.
        assert!(matches!(
            FuzzyNumber::from_level_family(
                vec![0.5, 1.0],
                vec![interval(0.0, 1.0), interval(0.0, 2.0)]
            ),
            Err(Error::NestingViolation { .. })
        ));
    }

    #[test]
    fn level_cuts_use_right_closed_steps() {
        // Membership {0.4: [0,4], 1: [1,2]} — the cut at r is the body at the
        // smallest stored level ≥ r.
        let a = fuzzy_interval(0.4, 0.0, 4.0, 1.0, 2.0);
        assert_eq!(sup(&a, 0.2), 4.0);
        assert_eq!(sup(&a, 0.4), 4.0);
        assert_eq!(sup(&a, 0.41), 2.0);
        assert_eq!(sup(&a, 1.0), 2.0);
        assert!(matches!(a.level_cut(0.0), Err(Error::LevelRange { .. })));
        assert!(matches!(a.level_cut(1.1), Err(Error::LevelRange { .. })));
    }

    #[test]
    fn membership_descends_from_the_top() {
        let a = fuzzy_interval(0.4, 0.0, 4.0, 1.0, 2.0);
        let m = |x: f64| a.membership(&[x], 1e-9).unwrap().value();
        assert_eq!(m(1.5), 1.0);
        assert_eq!(m(3.0), 0.4);
        assert_eq!(m(5.0), 0.0);
        assert_eq!(m(4.0), 0.4); // boundary of the outer cut
        assert!(a.membership(&[0.0, 0.0], 1e-9).is_err());
    }

    #[test]
    fn point_and_null_constructors() {
        let p = FuzzyNumber::from_point(vec![2.0, -1.0]).unwrap();
        assert_eq!(p.levels(), &[1.0]);
        assert_eq!(p.level_cut(1.0).unwrap().vertices(), &[vec![2.0, -1.0]]);
        let z = FuzzyNumber::null(2).unwrap();
        assert_eq!(z.level_cut(0.5).unwrap().vertices(), &[vec![0.0, 0.0]]);
    }

    #[test]
    fn addition_merges_level_grids_and_adds_cuts() {
        // A = {0.5: [-2,2], 1: [-1,1]}, B = {0.5: [0,4], 1: [1,3]}
        // A ⊕ B = {0.5: [-2,6], 1: [0,4]}.
        let a = fuzzy_interval(0.5, -2.0, 2.0, -1.0, 1.0);
        let b = fuzzy_interval(0.5, 0.0, 4.0, 1.0, 3.0);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.levels(), &[0.5, 1.0]);
        assert_eq!(sup(&sum, 0.5), 6.0);
        assert_eq!(inf(&sum, 0.5), -2.0);
        assert_eq!(sup(&sum, 1.0), 4.0);
        assert_eq!(inf(&sum, 1.0), 0.0);
    }

    #[test]
    fn addition_with_distinct_grids() {
        let a = fuzzy_interval(0.3, -1.0, 1.0, 0.0, 0.0);
        let b = fuzzy_interval(0.7, 0.0, 2.0, 1.0, 1.0);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.levels(), &[0.3, 0.7, 1.0]);
        // At 0.3: A cut [-1,1], B cut [0,2] → [-1,3].
        // At 0.7: A cut {0},   B cut [0,2] → [0,2].
        // At 1.0: {0} + {1} = {1}.
        assert_eq!(sup(&sum, 0.3), 3.0);
        assert_eq!(inf(&sum, 0.3), -1.0);
        assert_eq!(sup(&sum, 0.7), 2.0);
        assert_eq!(inf(&sum, 0.7), 0.0);
        assert_eq!(sup(&sum, 1.0), 1.0);
        assert_eq!(inf(&sum, 1.0), 1.0);
    }

    #[test]
    fn scaling_by_zero_collapses_to_the_null_number() {
        let a = fuzzy_interval(0.5, -2.0, 2.0, -1.0, 1.0);
        let z = a.scale(0.0).unwrap();
        assert_eq!(z.levels(), &[1.0]);
        assert_eq!(z.level_cut(1.0).unwrap().vertices(), &[vec![0.0]]);
    }

    #[test]
    fn scaling_scales_every_cut() {
        let a = fuzzy_interval(0.5, -2.0, 2.0, -1.0, 1.0);
        let b = a.scale(3.0).unwrap();
        assert_eq!(sup(&b, 0.5), 6.0);
        assert_eq!(sup(&b, 1.0), 3.0);
        assert!(a.scale(f64::NAN).is_err());
    }

    #[test]
    fn fuzzy_hausdorff_takes_the_worst_level() {
        let a = fuzzy_interval(0.5, -2.0, 2.0, -1.0, 1.0);
        // Same shape, top cut widened by 0.5 on each side.
        let b = fuzzy_interval(0.5, -2.0, 2.0, -1.5, 1.5);
        let d = a.hausdorff(&b, 1e-9).unwrap();
        assert!(float::abs(d - 0.5) <= 1e-9);
        assert_eq!(a.hausdorff(&a, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn nesting_tolerance_admits_tiny_violations() {
        // The upper cut pokes out by 1e-12 — far inside the validation slack.
        let fam = FuzzyNumber::from_level_family(
            vec![0.5, 1.0],
            vec![interval(0.0, 1.0), interval(0.0, 1.0 + 1e-12)],
        );
        assert!(fam.is_ok());
    }

    #[test]
    fn pruning_a_fuzzy_number_preserves_cut_geometry() {
        let lower =
            ConvexBody::new(1, vec![vec![-2.0], vec![2.0], vec![0.0], vec![1.0]]).unwrap();
        let upper = interval(-1.0, 1.0);
        let a = FuzzyNumber::from_level_family(vec![0.5, 1.0], vec![lower, upper]).unwrap();
        let p = a.pruned(1e-12).unwrap();
        assert_eq!(p.level_cut(0.5).unwrap().vertices().len(), 2);
        assert_eq!(a.hausdorff(&p, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn merged_level_grids_deduplicate_exactly() {
        assert_eq!(merge_levels(&[0.25, 1.0], &[0.25, 0.5, 1.0]), vec![0.25, 0.5, 1.0]);
        assert_eq!(merge_levels(&[1.0], &[1.0]), vec![1.0]);
    }
}
