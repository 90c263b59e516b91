//! Independent brute-force references for the kernel.
//!
//! Everything here recomputes its answer from first principles — explicit
//! vertex scans, exhaustive simplex enumeration (Carathéodory's theorem),
//! dense sup–min sampling — sharing no algorithmic path with the kernel's
//! nearest-point solver or Minkowski accumulation. Agreement between the
//! two routes is therefore evidence, not tautology.
//!
//! Brute force explodes quickly, so every entry point sits behind a hard
//! size guard (dimension ≤ 3, vertex lists ≤ 12, bounded sample grids) and
//! exceeding it is an error — never a silent fallback to the kernel.

use alloc::vec;
use alloc::vec::Vec;

use crate::convexgeom::{ConvexBody, Direction, Point};
use crate::error::{Error, Result};
use crate::float;
use crate::fuzzynum::{FuzzyNumber, Grade};
use crate::vecmath::{dist, dot, norm, sub};

/// Oracles refuse ambient dimensions above this.
pub const MAX_ORACLE_DIMS: usize = 3;
/// Oracles refuse vertex lists longer than this.
pub const MAX_ORACLE_VERTICES: usize = 12;
/// Sample grids refuse to enumerate more points than this.
pub const MAX_GRID_POINTS: usize = 200_000;

/// Barycentric coordinates this far below zero still count as inside a
/// face; keeps boundary carriers from being rejected for rounding.
const BARY_SLACK: f64 = 1e-12;

fn guard_dims(dims: usize) -> Result<()> {
    if dims > MAX_ORACLE_DIMS {
        return Err(Error::InstanceTooLarge { limit: MAX_ORACLE_DIMS, found: dims });
    }
    Ok(())
}

fn guard_cloud(len: usize) -> Result<()> {
    if len > MAX_ORACLE_VERTICES {
        return Err(Error::InstanceTooLarge { limit: MAX_ORACLE_VERTICES, found: len });
    }
    Ok(())
}

fn guard_body(body: &ConvexBody) -> Result<()> {
    guard_dims(body.dims())?;
    guard_cloud(body.vertices().len())
}

fn guard_fuzzy(value: &FuzzyNumber) -> Result<()> {
    guard_dims(value.dims())?;
    for body in value.bodies() {
        guard_cloud(body.vertices().len())?;
    }
    Ok(())
}

/// Support function by plain vertex scan. Bitwise-identical arithmetic to
/// the kernel (same dot-product order), independent control flow.
pub fn oracle_support(body: &ConvexBody, u: &Direction) -> Result<f64> {
    guard_body(body)?;
    if u.dims() != body.dims() {
        return Err(Error::DimensionMismatch { expected: body.dims(), found: u.dims() });
    }
    let mut best = f64::NEG_INFINITY;
    for v in body.vertices() {
        let mut s = 0.0;
        for (a, b) in v.iter().zip(u.coords()) {
            s += a * b;
        }
        if s > best {
            best = s;
        }
    }
    Ok(best)
}

/// Exact distance from `x` to the convex hull of a point cloud, by
/// Carathéodory enumeration: the nearest point lies in the convex hull of
/// some affinely independent subset of at most `d + 1` cloud points, so
/// every such subset is tried — affine projection via modified
/// Gram–Schmidt, barycentric feasibility, minimum over the survivors.
pub fn oracle_hull_distance(x: &[f64], cloud: &[Point]) -> Result<f64> {
    let dims = x.len();
    guard_dims(dims)?;
    guard_cloud(cloud.len())?;
    if cloud.is_empty() {
        return Err(Error::EmptyBody);
    }
    for p in cloud {
        if p.len() != dims {
            return Err(Error::DimensionMismatch { expected: dims, found: p.len() });
        }
    }

    let mut best = f64::INFINITY;
    for p in cloud {
        best = f64::min(best, dist(x, p));
    }

    let mut indices: Vec<usize> = Vec::new();
    for size in 2..=(dims + 1).min(cloud.len()) {
        subsets(cloud.len(), size, 0, &mut indices, &mut |subset| {
            if let Some(d) = face_distance(x, cloud, subset) {
                best = f64::min(best, d);
            }
        });
    }
    Ok(best)
}

/// Membership via [`oracle_hull_distance`]: inside iff distance ≤ `tol`.
pub fn oracle_hull_membership(x: &[f64], cloud: &[Point], tol: f64) -> Result<bool> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTolerance { value: tol });
    }
    Ok(oracle_hull_distance(x, cloud)? <= tol)
}

/// Membership grade by brute force: the largest stored level whose body
/// contains `x` within `tol`, containment decided by Carathéodory
/// enumeration rather than the kernel's nearest-point solver.
pub fn oracle_membership(value: &FuzzyNumber, x: &[f64], tol: f64) -> Result<Grade> {
    guard_fuzzy(value)?;
    if x.len() != value.dims() {
        return Err(Error::DimensionMismatch { expected: value.dims(), found: x.len() });
    }
    for i in (0..value.levels().len()).rev() {
        if oracle_hull_membership(x, value.bodies()[i].vertices(), tol)? {
            return Grade::new(value.levels()[i]);
        }
    }
    Ok(Grade::ZERO)
}

/// A regular axis-aligned sample grid covering given bodies with one cell
/// of margin on every side.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    dims: usize,
    mins: Vec<f64>,
    step: f64,
    counts: Vec<usize>,
}

impl SampleGrid {
    /// Builds a grid of spacing `step` whose box covers every vertex of
    /// every body, plus one step of margin. Errors when the grid would
    /// exceed [`MAX_GRID_POINTS`].
    pub fn covering(bodies: &[&ConvexBody], step: f64) -> Result<Self> {
        if bodies.is_empty() {
            return Err(Error::BadParameter("sample grid needs at least one body"));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::BadTolerance { value: step });
        }
        let dims = bodies[0].dims();
        guard_dims(dims)?;
        for b in bodies {
            if b.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: b.dims() });
            }
        }
        let mut lo = vec![f64::INFINITY; dims];
        let mut hi = vec![f64::NEG_INFINITY; dims];
        for b in bodies {
            for v in b.vertices() {
                for j in 0..dims {
                    lo[j] = f64::min(lo[j], v[j]);
                    hi[j] = f64::max(hi[j], v[j]);
                }
            }
        }
        let mut mins = Vec::with_capacity(dims);
        let mut counts = Vec::with_capacity(dims);
        let mut total: usize = 1;
        for j in 0..dims {
            let lo_j = lo[j] - step;
            let hi_j = hi[j] + step;
            let span = hi_j - lo_j;
            let count = (float::floor(span / step) as usize) + 2;
            total = total
                .checked_mul(count)
                .ok_or(Error::InstanceTooLarge { limit: MAX_GRID_POINTS, found: usize::MAX })?;
            if total > MAX_GRID_POINTS {
                return Err(Error::InstanceTooLarge { limit: MAX_GRID_POINTS, found: total });
            }
            mins.push(lo_j);
            counts.push(count);
        }
        Ok(Self { dims, mins, step, counts })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Diagonal of one grid cell: the worst distance from any covered
    /// point to its nearest grid point is half of this.
    pub fn cell_diagonal(&self) -> f64 {
        self.step * float::sqrt(self.dims as f64)
    }

    /// The grid point with flat index `i` (row-major decode).
    pub fn point(&self, mut i: usize) -> Point {
        let mut p = vec![0.0; self.dims];
        for j in (0..self.dims).rev() {
            let c = self.counts[j];
            p[j] = self.mins[j] + (i % c) as f64 * self.step;
            i /= c;
        }
        p
    }

    /// All grid points, in flat-index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

/// Sup–min (extension-principle) addition, brute-forced: for each query
/// `x`, `sup_p min(μ_u(p), μ_v(x − p))` over a sample grid of spacing
/// `step` covering the support of `u`. Memberships are decided by the
/// Carathéodory oracle with tolerance `tol`; passing `tol` inflated by the
/// grid cell diagonal turns the sampled sup into an upper bound for the
/// true one, which is how the two-sided agreement check is built.
pub fn oracle_supmin_add(
    u: &FuzzyNumber,
    v: &FuzzyNumber,
    queries: &[Point],
    step: f64,
    tol: f64,
) -> Result<Vec<Grade>> {
    guard_fuzzy(u)?;
    guard_fuzzy(v)?;
    if u.dims() != v.dims() {
        return Err(Error::DimensionMismatch { expected: u.dims(), found: v.dims() });
    }
    for x in queries {
        if x.len() != u.dims() {
            return Err(Error::DimensionMismatch { expected: u.dims(), found: x.len() });
        }
    }
    let grid = SampleGrid::covering(&[&u.bodies()[0]], step)?;
    let u_grades: Result<Vec<f64>> = grid
        .points()
        .map(|p| oracle_membership(u, &p, tol).map(|g| g.value()))
        .collect();
    let u_grades = u_grades?;

    let mut out = Vec::with_capacity(queries.len());
    for x in queries {
        let mut best = 0.0f64;
        for (gi, p) in grid.points().enumerate() {
            let gu = u_grades[gi];
            if gu <= best {
                continue;
            }
            let q = sub(x, &p);
            let gv = oracle_membership(v, &q, tol)?.value();
            let g = f64::min(gu, gv);
            if g > best {
                best = g;
                if best >= 1.0 {
                    break;
                }
            }
        }
        out.push(Grade::new(best)?);
    }
    Ok(out)
}

/// Lexicographic subset walker (sizes stay tiny: at most d+1 of ≤ 12).
fn subsets(n: usize, size: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == size {
        f(acc);
        return;
    }
    let need = size - acc.len();
    let mut i = start;
    while i < n && n - i >= need {
        acc.push(i);
        subsets(n, size, i + 1, acc, f);
        acc.pop();
        i += 1;
    }
}

/// Distance from `x` to `conv(points[subset])` if the orthogonal
/// projection onto the subset's affine hull has (near-)nonnegative
/// barycentric coordinates; `None` when the projection leaves the face or
/// the subset is affinely dependent (its faces are covered by smaller
/// subsets).
fn face_distance(x: &[f64], cloud: &[Point], subset: &[usize]) -> Option<f64> {
    let k = subset.len();
    let d = x.len();
    let base = &cloud[subset[0]];

    // Modified Gram–Schmidt on the edge vectors, tracking the triangular
    // coefficients so barycentric coordinates can be recovered.
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k - 1);
    let mut r: Vec<Vec<f64>> = Vec::with_capacity(k - 1);
    for j in 1..k {
        let mut e = sub(&cloud[subset[j]], base);
        let original = norm(&e);
        let mut coeffs = vec![0.0; k - 1];
        for (qi, qv) in q.iter().enumerate() {
            let c = dot(&e, qv);
            coeffs[qi] = c;
            for t in 0..d {
                e[t] -= c * qv[t];
            }
        }
        let n = norm(&e);
        if n <= 1e-9 * (1.0 + original) {
            return None;
        }
        for t in e.iter_mut() {
            *t /= n;
        }
        coeffs[q.len()] = n;
        q.push(e);
        r.push(coeffs);
    }

    let xm = sub(x, base);
    let t: Vec<f64> = q.iter().map(|qv| dot(&xm, qv)).collect();

    // Back-substitute R·c = t for the edge coefficients.
    let m = k - 1;
    let mut c = vec![0.0; m];
    for row in (0..m).rev() {
        let mut v = t[row];
        for col in (row + 1)..m {
            v -= r[col][row] * c[col];
        }
        c[row] = v / r[row][row];
    }
    let mut lambda0 = 1.0;
    for &cv in &c {
        if cv < -BARY_SLACK {
            return None;
        }
        lambda0 -= cv;
    }
    if lambda0 < -BARY_SLACK {
        return None;
    }

    let mut resid = xm;
    for (qi, qv) in q.iter().enumerate() {
        for tt in 0..d {
            resid[tt] -= t[qi] * qv[tt];
        }
    }
    Some(norm(&resid))
}
