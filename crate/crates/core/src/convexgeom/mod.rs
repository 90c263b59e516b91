//! Convex polytope kernel.
//!
//! Bodies are nonempty convex polytopes in vertex representation: a body
//! *is* the convex hull of its stored vertex list, and nothing ever needs
//! the hull to be materialized. On that representation the support function
//! `s(u, A) = max_{v ∈ A} ⟨u, v⟩`, Minkowski sum (pairwise vertex sums),
//! scalar image and translation are all exact up to floating-point
//! rounding, which is what makes support-function identities such as
//! `s(u, A ⊕ B) = s(u, A) + s(u, B)` checkable at the 1e-12 scale.
//!
//! Distances (point-to-body, Hausdorff) go through a nearest-point solver
//! ([`ConvexBody::min_norm_point`]); membership and inclusion are distance
//! queries with an explicit tolerance. Directions are unit vectors;
//! [`DirectionGrid`] bundles an antipodally symmetric, space-spanning set
//! of them for support-function sweeps and estimates.

mod hull2d;
mod solver;

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::float;
use crate::vecmath::{self, dot, lex_cmp, norm, norm_sq};
use crate::DEFAULT_MAX_ITER;

/// A point of ℝᵈ as a plain coordinate vector.
pub type Point = Vec<f64>;

/// Directions must be unit vectors to within this (Euclidean norm).
const UNIT_TOL: f64 = 1e-12;
/// Two grid directions closer than this are duplicates; a direction whose
/// negation is missing at this tolerance breaks grid symmetry.
const GRID_MATCH_TOL: f64 = 1e-12;
/// Seed for the quasi-uniform direction sample in dimensions ≥ 3.
const GRID_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// A unit vector of ℝᵈ used as a support-function argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    coords: Vec<f64>,
}

impl Direction {
    /// Wraps coordinates that are already unit-norm (within 1e-12).
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDirection);
        }
        if !vecmath::all_finite(&coords) {
            return Err(Error::NonFinite);
        }
        let n = norm(&coords);
        if float::abs(n - 1.0) > UNIT_TOL {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(Self { coords })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDirection);
        }
        if !vecmath::all_finite(&coords) {
            return Err(Error::NonFinite);
        }
        let n = norm(&coords);
        if n < 1e-300 {
            return Err(Error::ZeroDirection);
        }
        Self::new(coords.iter().map(|c| c / n).collect())
    }

    /// The `index`-th standard basis vector of ℝ^`dims`.
    pub fn axis(dims: usize, index: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::BadParameter("dims must be at least 1"));
        }
        if index >= dims {
            return Err(Error::BadParameter("axis index out of range"));
        }
        let mut coords = vec![0.0; dims];
        coords[index] = 1.0;
        Ok(Self { coords })
    }

    /// The opposite direction (exact coordinate negation).
    pub fn negated(&self) -> Self {
        Self { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }
}

/// A finite, antipodally symmetric, space-spanning set of directions.
///
/// Grids drive support-function sweeps: residual reports, Hausdorff
/// estimates, support-nonnegativity checks. Symmetry (`-u` present for
/// every `u`) makes those sweeps see both sides of every slab; spanning
/// keeps estimates from being blind to a whole subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionGrid {
    dims: usize,
    directions: Vec<Direction>,
}

impl DirectionGrid {
    /// Validates and wraps an explicit direction list: consistent
    /// dimension, no duplicates (1e-12), antipodal symmetry (1e-12), and
    /// full span of ℝᵈ.
    pub fn new(dims: usize, directions: Vec<Direction>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::BadParameter("dims must be at least 1"));
        }
        if directions.is_empty() {
            return Err(Error::DegenerateGrid);
        }
        for d in &directions {
            if d.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: d.dims() });
            }
        }
        for i in 0..directions.len() {
            for j in (i + 1)..directions.len() {
                if vecmath::dist(directions[i].coords(), directions[j].coords()) < GRID_MATCH_TOL
                {
                    return Err(Error::DuplicateDirection { first: i, second: j });
                }
            }
        }
        for (i, d) in directions.iter().enumerate() {
            let neg = d.negated();
            let has_neg = directions
                .iter()
                .any(|o| vecmath::dist(o.coords(), neg.coords()) < GRID_MATCH_TOL);
            if !has_neg {
                return Err(Error::AsymmetricGrid { index: i });
            }
        }
        if !spans(dims, &directions) {
            return Err(Error::DegenerateGrid);
        }
        Ok(Self { dims, directions })
    }

    /// The default grid: `{+1, -1}` on the line, 64 equally spaced angles
    /// in the plane, and in higher dimensions the `2d` axis directions
    /// plus a fixed-seed quasi-uniform antipodal sample (128 by default).
    pub fn standard(dims: usize) -> Result<Self> {
        let total = match dims {
            0 => 0, // rejected below
            1 => 2,
            2 => 64,
            d => 2 * d + 128,
        };
        Self::with_size(dims, total)
    }

    /// A grid with approximately `total` directions: exact for the plane
    /// (rounded up to an even count of at least 4), `{+1, -1}` on the line
    /// regardless of `total`, and for dims ≥ 3 the axis pairs plus however
    /// many sampled antipodal pairs reach `total`.
    pub fn with_size(dims: usize, total: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::BadParameter("dims must be at least 1"));
        }
        let directions = match dims {
            1 => vec![
                Direction { coords: vec![1.0] },
                Direction { coords: vec![-1.0] },
            ],
            2 => {
                let half = (total.max(4)).div_ceil(2);
                let mut dirs = Vec::with_capacity(2 * half);
                for k in 0..half {
                    let angle = core::f64::consts::PI * (k as f64) / (half as f64);
                    dirs.push(Direction { coords: vec![float::cos(angle), float::sin(angle)] });
                }
                for k in 0..half {
                    let neg = dirs[k].negated();
                    dirs.push(neg);
                }
                dirs
            }
            d => {
                let mut dirs: Vec<Direction> = Vec::new();
                for i in 0..d {
                    let axis = Direction::axis(d, i)?;
                    dirs.push(axis.negated());
                    dirs.push(axis);
                }
                let want = total.max(2 * d + 2);
                let mut rng = ChaCha8Rng::seed_from_u64(GRID_SEED);
                while dirs.len() < want {
                    let coords: Vec<f64> =
                        (0..d).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
                    let n2 = norm_sq(&coords);
                    if !(0.01..=1.0).contains(&n2) {
                        continue;
                    }
                    let n = float::sqrt(n2);
                    let unit: Vec<f64> = coords.iter().map(|c| c / n).collect();
                    let close = dirs.iter().any(|o| {
                        vecmath::dist(o.coords(), &unit) < 1e-9
                            || vecmath::dist(o.negated().coords(), &unit) < 1e-9
                    });
                    if close {
                        continue;
                    }
                    let dir = Direction { coords: unit };
                    let neg = dir.negated();
                    dirs.push(dir);
                    dirs.push(neg);
                }
                dirs
            }
        };
        Self::new(dims, directions)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Direction> {
        self.directions.iter()
    }
}

/// Rank check: do the directions span ℝᵈ?
#[allow(clippy::needless_range_loop)] // elimination mutates rows it also reads
fn spans(dims: usize, directions: &[Direction]) -> bool {
    let mut m: Vec<Vec<f64>> = directions.iter().map(|d| d.coords.clone()).collect();
    let rows = m.len();
    let mut rank = 0;
    for col in 0..dims {
        let mut piv = None;
        let mut best = 1e-12;
        for (r, row) in m.iter().enumerate().take(rows).skip(rank) {
            let a = float::abs(row[col]);
            if a > best {
                best = a;
                piv = Some(r);
            }
        }
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        for r in (rank + 1)..rows {
            let factor = m[r][col] / m[rank][col];
            if factor != 0.0 {
                for c in col..dims {
                    let sub = factor * m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == dims {
            return true;
        }
    }
    false
}

/// A nonempty convex polytope, stored as the vertex list whose convex hull
/// it denotes. The list may contain redundant (non-extreme) points; all
/// operations are hull-invariant. Equality is list equality, not hull
/// equality — compare geometries with [`ConvexBody::hausdorff`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    dims: usize,
    vertices: Vec<Point>,
}

impl ConvexBody {
    /// Wraps a nonempty list of finite `dims`-dimensional points.
    pub fn new(dims: usize, vertices: Vec<Point>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::BadParameter("dims must be at least 1"));
        }
        if vertices.is_empty() {
            return Err(Error::EmptyBody);
        }
        for v in &vertices {
            if v.len() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: v.len() });
            }
            if !vecmath::all_finite(v) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { dims, vertices })
    }

    /// The one-point body `{x}`.
    pub fn singleton(point: Point) -> Result<Self> {
        let dims = point.len();
        Self::new(dims, vec![point])
    }

    /// The one-point body `{0}` in ℝ^`dims`.
    pub fn origin(dims: usize) -> Result<Self> {
        Self::new(dims, vec![vec![0.0; dims]])
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Support function `s(u, A) = max_{v} ⟨u, v⟩`. Exact up to rounding.
    pub fn support(&self, u: &Direction) -> Result<f64> {
        self.check_dims(u.dims())?;
        let mut best = dot(&self.vertices[0], u.coords());
        for v in &self.vertices[1..] {
            best = f64::max(best, dot(v, u.coords()));
        }
        Ok(best)
    }

    /// The vertex attaining `s(u, A)`, ties broken by picking the
    /// lexicographically largest coordinate vector. Lexicographic order is
    /// translation- and addition-compatible, which makes this selection
    /// Minkowski-additive: the canonical point of `A ⊕ B` is the sum of the
    /// canonical points of `A` and `B`.
    pub fn canonical_selection(&self, u: &Direction) -> Result<Point> {
        self.check_dims(u.dims())?;
        let mut best = &self.vertices[0];
        let mut best_dot = dot(best, u.coords());
        for v in &self.vertices[1..] {
            let d = dot(v, u.coords());
            if d > best_dot
                || (d == best_dot && lex_cmp(v, best) == core::cmp::Ordering::Greater)
            {
                best = v;
                best_dot = d;
            }
        }
        Ok(best.clone())
    }

    /// Minkowski sum `A ⊕ B`: all pairwise vertex sums, in the order
    /// (self-major, other-minor). The list grows multiplicatively; see
    /// [`ConvexBody::pruned`] for keeping repeated sums tractable.
    pub fn minkowski_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other.dims)?;
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                vertices.push(vecmath::add(a, b));
            }
        }
        Self::new(self.dims, vertices)
    }

    /// Scalar image `k·A`. `k = 0` collapses to the exact singleton `{0}`.
    pub fn scale(&self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite);
        }
        if k == 0.0 {
            return Self::origin(self.dims);
        }
        let vertices = self.vertices.iter().map(|v| vecmath::scale(v, k)).collect();
        Self::new(self.dims, vertices)
    }

    /// The translate `A - x`.
    pub fn translate_by_negative(&self, x: &[f64]) -> Result<Self> {
        if x.len() != self.dims {
            return Err(Error::DimensionMismatch { expected: self.dims, found: x.len() });
        }
        if !vecmath::all_finite(x) {
            return Err(Error::NonFinite);
        }
        let vertices = self.vertices.iter().map(|v| vecmath::sub(v, x)).collect();
        Self::new(self.dims, vertices)
    }

    /// `conv(A ∪ B)`, by concatenating vertex lists (hull stays implicit).
    pub fn hull_union(&self, other: &Self) -> Result<Self> {
        self.check_dims(other.dims)?;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        Self::new(self.dims, vertices)
    }

    /// Nearest point of the body to the origin, within `tol`.
    pub fn min_norm_point(&self, tol: f64) -> Result<Point> {
        solver::min_norm_point(&self.vertices, self.dims, tol, DEFAULT_MAX_ITER)
    }

    /// Euclidean distance from `x` to the body, within `tol`.
    pub fn distance(&self, x: &[f64], tol: f64) -> Result<f64> {
        let translated = self.translate_by_negative(x)?;
        let nearest = translated.min_norm_point(tol)?;
        Ok(norm(&nearest))
    }

    /// Membership with tolerance: `distance(x, A) ≤ tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.distance(x, tol)? <= tol)
    }

    /// Inclusion with tolerance: every vertex of `self` lies in `other`.
    pub fn subset_of(&self, other: &Self, tol: f64) -> Result<bool> {
        self.check_dims(other.dims)?;
        for v in &self.vertices {
            if !other.contains(v, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One-sided Hausdorff excess `sup_{a ∈ A} dist(a, B)`. For polytopes
    /// the supremum is attained at a vertex (distance to a convex set is a
    /// convex function), so scanning vertices is exact.
    pub fn hausdorff_directed(&self, other: &Self, tol: f64) -> Result<f64> {
        self.check_dims(other.dims)?;
        let mut worst = 0.0f64;
        for v in &self.vertices {
            worst = f64::max(worst, other.distance(v, tol)?);
        }
        Ok(worst)
    }

    /// Hausdorff distance `max` of the two one-sided excesses.
    pub fn hausdorff(&self, other: &Self, tol: f64) -> Result<f64> {
        let ab = self.hausdorff_directed(other, tol)?;
        let ba = other.hausdorff_directed(self, tol)?;
        Ok(f64::max(ab, ba))
    }

    /// Support-gap estimate `max_{u ∈ grid} |s(u, A) - s(u, B)|`. Always a
    /// lower bound for the Hausdorff distance (it equals the sup over all
    /// of the unit sphere); useful as a fast cross-check.
    pub fn hausdorff_support_estimate(&self, other: &Self, grid: &DirectionGrid) -> Result<f64> {
        self.check_dims(other.dims)?;
        self.check_dims(grid.dims())?;
        let mut worst = 0.0f64;
        for u in grid.iter() {
            let gap = float::abs(self.support(u)? - other.support(u)?);
            worst = f64::max(worst, gap);
        }
        Ok(worst)
    }

    /// A hull-equal body with (nearly) minimal vertex list.
    ///
    /// On the line and in the plane the result is the exact extreme-point
    /// set. In higher dimensions extreme points are collected in two
    /// passes: supporting vertices over the standard direction grid
    /// (guaranteed extreme), then every remaining point lying measurably
    /// outside the hull of the collected ones; a final sweep drops members
    /// that ended up redundant. Points within `tol · (1 + max vertex
    /// norm)` of the hull of the others may be dropped, so supports move
    /// by at most that much — keep `tol` at the geometric-identity scale
    /// (1e-12), well under the support-residual budget.
    pub fn pruned(&self, tol: f64) -> Result<Self> {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::BadTolerance { value: tol });
        }
        let mut verts = self.vertices.clone();
        verts.sort_by(|a, b| lex_cmp(a, b));
        verts.dedup();
        let kept = match self.dims {
            1 => {
                let lo = verts.first().cloned().ok_or(Error::EmptyBody)?;
                let hi = verts.last().cloned().ok_or(Error::EmptyBody)?;
                if lo == hi {
                    vec![lo]
                } else {
                    vec![lo, hi]
                }
            }
            2 => hull2d::convex_hull_2d(&verts),
            _ => prune_nd(self.dims, verts, tol)?,
        };
        Self::new(self.dims, kept)
    }

    /// Arithmetic mean of the stored vertices — an interior point of the
    /// hull (the hull centroid only when the list is the exact vertex set).
    pub fn vertex_centroid(&self) -> Point {
        let mut c = vec![0.0; self.dims];
        for v in &self.vertices {
            for j in 0..self.dims {
                c[j] += v[j];
            }
        }
        let n = self.vertices.len() as f64;
        for x in &mut c {
            *x /= n;
        }
        c
    }

    /// Largest vertex norm — a radius bound for the body.
    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices.iter().map(|v| norm(v)).fold(0.0, f64::max)
    }

    fn check_dims(&self, found: usize) -> Result<()> {
        if found != self.dims {
            return Err(Error::DimensionMismatch { expected: self.dims, found });
        }
        Ok(())
    }
}

/// Extreme-point filter for dimensions ≥ 3 (see [`ConvexBody::pruned`]).
fn prune_nd(dims: usize, verts: Vec<Point>, tol: f64) -> Result<Vec<Point>> {
    if verts.len() <= dims + 1 {
        return Ok(verts);
    }
    let scale = verts.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let eps = tol * (1.0 + scale);

    // Pass 1: supporting vertices over the standard grid. The lex-largest
    // maximizer in any direction is an extreme point of the hull.
    let grid = DirectionGrid::standard(dims)?;
    let mut kept: Vec<Point> = Vec::new();
    for u in grid.iter() {
        let mut best = &verts[0];
        let mut best_dot = dot(best, u.coords());
        for v in &verts[1..] {
            let d = dot(v, u.coords());
            if d > best_dot
                || (d == best_dot && lex_cmp(v, best) == core::cmp::Ordering::Greater)
            {
                best = v;
                best_dot = d;
            }
        }
        if !kept.contains(best) {
            kept.push(best.clone());
        }
    }

    // Pass 2: admit everything measurably outside the hull of the seeds,
    // far points first so corners are available early.
    let mut rest: Vec<Point> = verts.into_iter().filter(|v| !kept.contains(v)).collect();
    rest.sort_by(|a, b| {
        norm_sq(b)
            .partial_cmp(&norm_sq(a))
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| lex_cmp(b, a))
    });
    for p in rest {
        let translated: Vec<Point> = kept.iter().map(|k| vecmath::sub(k, &p)).collect();
        let nearest = solver::min_norm_point(&translated, dims, eps, DEFAULT_MAX_ITER)?;
        if norm(&nearest) > eps {
            kept.push(p);
        }
    }

    // Pass 3: drop members now interior to the hull of the others.
    let mut i = 0;
    while i < kept.len() && kept.len() > 1 {
        let p = kept[i].clone();
        let translated: Vec<Point> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, k)| vecmath::sub(k, &p))
            .collect();
        let nearest = solver::min_norm_point(&translated, dims, eps, DEFAULT_MAX_ITER)?;
        if norm(&nearest) <= eps {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}
