//! Finite atomic measure spaces and fuzzy-set-valued mappings on them.
//!
//! The measurable structure is the full power set of a finite atom list,
//! so every mapping is simple (finitely many values) and measurable by
//! construction. Weights are nonnegative reals — not necessarily summing
//! to one — which is all the set-valued integral needs. Atoms with weight
//! zero are legal; they are invisible to integrals and make conditional
//! objects over null sets undefined ([`Error::NullSet`]).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::convexgeom::{ConvexBody, Direction, Point};
use crate::error::{Error, Result};
use crate::fuzzynum::{merge_levels, FuzzyNumber};

/// A finite measure space: named atoms with nonnegative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasureSpace {
    ids: Vec<String>,
    weights: Vec<f64>,
}

impl FiniteMeasureSpace {
    /// One weight per atom, all finite and nonnegative, ids distinct.
    pub fn new(ids: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::BadParameter("a measure space needs at least one atom"));
        }
        if ids.len() != weights.len() {
            return Err(Error::BadParameter("one weight per atom"));
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if *w < 0.0 {
                return Err(Error::NegativeWeight { index: i });
            }
        }
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                if ids[i] == ids[j] {
                    return Err(Error::DuplicateAtomId { id: ids[j].clone() });
                }
            }
        }
        Ok(Self { ids, weights })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn atom_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atom_id(&self, index: usize) -> Result<&str> {
        self.check_index(index)?;
        Ok(&self.ids[index])
    }

    pub fn weight(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        Ok(self.weights[index])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Total mass `μ(Ω)`.
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `μ(E)`: the weight sum over the atoms of `E`.
    pub fn measure_of(&self, set: &MeasurableSet) -> Result<f64> {
        let mut total = 0.0;
        for i in set.iter() {
            self.check_index(i)?;
            total += self.weights[i];
        }
        Ok(total)
    }

    /// The full set `Ω`.
    pub fn full_set(&self) -> MeasurableSet {
        MeasurableSet::full(self.len())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.ids.len() {
            return Err(Error::AtomIndexOutOfRange { index, atoms: self.ids.len() });
        }
        Ok(())
    }
}

/// A subset of the atoms, by index. The power set is the σ-algebra here,
/// so any index set is measurable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct MeasurableSet {
    indices: BTreeSet<usize>,
}

impl MeasurableSet {
    pub fn empty() -> Self {
        Self { indices: BTreeSet::new() }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self { indices: indices.into_iter().collect() }
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        Self { indices: (0..n).collect() }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Ascending atom indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { indices: self.indices.union(&other.indices).copied().collect() }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.indices.is_disjoint(&other.indices)
    }
}

/// A fuzzy-set-valued mapping `ω ↦ Γ̃(ω)` on a finite measure space: one
/// fuzzy number per atom, all in the same ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMapping {
    space: FiniteMeasureSpace,
    values: Vec<FuzzyNumber>,
}

impl FuzzyMapping {
    pub fn new(space: FiniteMeasureSpace, values: Vec<FuzzyNumber>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::ValueCountMismatch { atoms: space.len(), values: values.len() });
        }
        let dims = values[0].dims();
        for v in &values {
            if v.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: v.dims() });
            }
        }
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &FiniteMeasureSpace {
        &self.space
    }

    pub fn dims(&self) -> usize {
        self.values[0].dims()
    }

    pub fn values(&self) -> &[FuzzyNumber] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> Result<&FuzzyNumber> {
        if atom >= self.values.len() {
            return Err(Error::AtomIndexOutOfRange { index: atom, atoms: self.values.len() });
        }
        Ok(&self.values[atom])
    }

    /// The level mapping `ω ↦ Γ̃_r(ω)`: one convex body per atom.
    pub fn level_bodies(&self, r: f64) -> Result<Vec<&ConvexBody>> {
        self.values.iter().map(|v| v.level_cut(r)).collect()
    }

    /// The union of stored levels across the atoms of `set`, plus level 1.
    /// Every atom's level cuts — and hence any level-wise integral over
    /// `set` — are constant between consecutive entries of this grid, so it
    /// carries the full information of the mapping restricted to `set`.
    pub fn level_grid(&self, set: &MeasurableSet) -> Result<Vec<f64>> {
        let mut grid: Vec<f64> = alloc::vec![1.0];
        for i in set.iter() {
            let value = self.value(i)?;
            grid = merge_levels(&grid, value.levels());
        }
        Ok(grid)
    }

    /// Atom-wise level-wise sum; both mappings must live on the same
    /// measure space (same atom ids and weights).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let values: Result<Vec<FuzzyNumber>> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Self { space: self.space.clone(), values: values? })
    }

    /// Atom-wise scalar image.
    pub fn scale(&self, k: f64) -> Result<Self> {
        let values: Result<Vec<FuzzyNumber>> = self.values.iter().map(|v| v.scale(k)).collect();
        Ok(Self { space: self.space.clone(), values: values? })
    }

    /// The canonical selection along `u` at level `r`: at every atom, the
    /// canonical supporting vertex of `Γ̃_r(ω)`. Because level sets are
    /// nested, the selection taken at level 1 is simultaneously a
    /// selection at every level.
    pub fn canonical_selection(&self, u: &Direction, r: f64) -> Result<Selection> {
        let mut points = Vec::with_capacity(self.values.len());
        for v in &self.values {
            points.push(v.level_cut(r)?.canonical_selection(u)?);
        }
        Selection::new(self, r, points, crate::DEFAULT_SOLVER_TOL)
    }
}

/// A measurable (here: any) point-valued map `ω ↦ f(ω)` that stays inside
/// a mapping's level sets: `f(ω) ∈ Γ̃_r(ω)` for the level it was validated
/// at. Construction checks membership atom by atom.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    level: f64,
    points: Vec<Point>,
}

impl Selection {
    /// Validates `points[ω] ∈ Γ̃_level(ω)` within `tol` for every atom.
    pub fn new(
        mapping: &FuzzyMapping,
        level: f64,
        points: Vec<Point>,
        tol: f64,
    ) -> Result<Self> {
        if points.len() != mapping.space().len() {
            return Err(Error::ValueCountMismatch {
                atoms: mapping.space().len(),
                values: points.len(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != mapping.dims() {
                return Err(Error::DimensionMismatch {
                    expected: mapping.dims(),
                    found: p.len(),
                });
            }
            if !mapping.value(i)?.level_cut(level)?.contains(p, tol)? {
                return Err(Error::NotASelection { atom: i });
            }
        }
        Ok(Self { level, points })
    }

    /// The level this selection was validated at.
    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, atom: usize) -> Result<&Point> {
        if atom >= self.points.len() {
            return Err(Error::AtomIndexOutOfRange { index: atom, atoms: self.points.len() });
        }
        Ok(&self.points[atom])
    }
}

/// A family with geometrically decaying weights over one constant body:
/// atoms `g1 … gn` with weights `q, q², …, qⁿ` all mapped to the crisp
/// body `B`. Running partial integrals converge at the rate of the
/// geometric tail, which gives checkable convergence bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricTailFamily {
    mapping: FuzzyMapping,
    ratio: f64,
}

/// Builds the geometric tail family for `ratio ∈ (0, 1)` and `count ≥ 1`
/// atoms over the crisp body `B`.
pub fn geometric_tail_family(
    body: &ConvexBody,
    ratio: f64,
    count: usize,
) -> Result<GeometricTailFamily> {
    if !ratio.is_finite() || !(0.0 < ratio && ratio < 1.0) {
        return Err(Error::BadParameter("tail ratio must lie strictly between 0 and 1"));
    }
    if count == 0 {
        return Err(Error::BadParameter("tail family needs at least one atom"));
    }
    let mut ids = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    let mut w = 1.0f64;
    for i in 0..count {
        let mut id = String::from("g");
        push_usize(&mut id, i + 1);
        ids.push(id);
        w *= ratio;
        weights.push(w);
    }
    let space = FiniteMeasureSpace::new(ids, weights)?;
    let value = FuzzyNumber::from_level_family(alloc::vec![1.0], alloc::vec![body.clone()])?;
    let values = alloc::vec![value; count];
    let mapping = FuzzyMapping::new(space, values)?;
    Ok(GeometricTailFamily { mapping, ratio })
}

impl GeometricTailFamily {
    pub fn mapping(&self) -> &FuzzyMapping {
        &self.mapping
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Atom count of the family (always at least 1).
    pub fn len(&self) -> usize {
        self.mapping.space().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bound for the Hausdorff gap between the partial integral over the
    /// first `prefix` atoms and the full integral: the remaining mass times
    /// the body's radius bound, `(Σ_{i>prefix} qⁱ) · max‖v‖`.
    pub fn tail_bound(&self, prefix: usize) -> f64 {
        let radius = self.mapping.values()[0]
            .bodies()
            .first()
            .map(|b| b.max_vertex_norm())
            .unwrap_or(0.0);
        let mut mass = 0.0;
        for (i, w) in self.mapping.space().weights().iter().enumerate() {
            if i >= prefix {
                mass += w;
            }
        }
        mass * radius
    }
}

fn push_usize(target: &mut String, value: usize) {
    use core::fmt::Write;
    let _ = write!(target, "{value}");
}
