//! Level-wise set-valued integration and its verification suite.
//!
//! For a fuzzy mapping `Γ̃` on a finite space and a set `E` of atoms, the
//! integral is computed level by level: at each level `r` it is the
//! weighted Minkowski sum `Σ_{ω ∈ E} μ({ω}) · Γ̃_r(ω)` over the atoms of
//! positive weight, and the level-wise family (taken on the union of the
//! atoms' stored level grids, plus level 1) assembles into a fuzzy number
//! through the *validating* constructor — nesting of the result is
//! asserted, not assumed.
//!
//! The defining identity ties the integral to plain scalar integration of
//! support functions: for every direction `u` and level `r`,
//!
//! ```text
//! s(u, ∫_E Γ̃_r dμ)  =  ∫_E s(u, Γ̃_r(ω)) dμ(ω)  =  Σ_ω μ({ω}) · s(u, Γ̃_r(ω))
//! ```
//!
//! Every integral carries a residual report quantifying exactly that
//! identity over a direction grid. The rest of this module turns the
//! structural theorems of the level-wise theory into checkable reports:
//! set-function behaviour of `E ↦ ∫_E Γ̃ dμ` (null empty set, finite
//! additivity, level monotonicity, step stability, geometric-tail
//! convergence), decomposition around a point-valued selection, linearity
//! in the integrand, and conditional cores.

use alloc::vec::Vec;

use crate::convexgeom::{ConvexBody, Direction, DirectionGrid, Point};
use crate::error::{Error, Result};
use crate::float;
use crate::fuzzynum::FuzzyNumber;
use crate::measurespace::{FuzzyMapping, GeometricTailFamily, MeasurableSet, Selection};
use crate::{DEFAULT_GEOMETRY_TOL, DEFAULT_SOLVER_TOL, DEFAULT_SUPPORT_TOL};

/// Accumulated Minkowski sums are pruned (when enabled) once their vertex
/// list outgrows this.
const PRUNE_TRIGGER: usize = 32;

/// Tolerances and behaviour switches shared by the integral operations.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralConfig {
    /// Nearest-point solver tolerance (membership, distances).
    pub solver_tol: f64,
    /// Budget for support-function identities and integral residuals.
    pub support_tol: f64,
    /// Budget for exact per-vertex identities (reconstruction, pruning).
    pub geometry_tol: f64,
    /// Prune accumulated Minkowski sums to their extreme points. Off by
    /// default: pruning perturbs supports by up to `geometry_tol` per
    /// step, a documented trade for keeping many-atom products tractable.
    pub prune: bool,
}

impl Default for IntegralConfig {
    fn default() -> Self {
        Self {
            solver_tol: DEFAULT_SOLVER_TOL,
            support_tol: DEFAULT_SUPPORT_TOL,
            geometry_tol: DEFAULT_GEOMETRY_TOL,
            prune: false,
        }
    }
}

impl IntegralConfig {
    fn validate(&self) -> Result<()> {
        for tol in [self.solver_tol, self.support_tol, self.geometry_tol] {
            if !tol.is_finite() || tol <= 0.0 {
                return Err(Error::BadTolerance { value: tol });
            }
        }
        Ok(())
    }
}

/// The scalar integral `Σ_{ω ∈ set} μ({ω}) · s(u, Γ̃_r(ω))` — the
/// support-function side of the defining identity, computed from the atom
/// bodies directly (it never sees the set-valued accumulation).
pub fn scalar_integral(
    mapping: &FuzzyMapping,
    set: &MeasurableSet,
    u: &Direction,
    r: f64,
) -> Result<f64> {
    if u.dims() != mapping.dims() {
        return Err(Error::DimensionMismatch { expected: mapping.dims(), found: u.dims() });
    }
    let mut total = 0.0;
    for i in set.iter() {
        let w = mapping.space().weight(i)?;
        if w == 0.0 {
            continue;
        }
        total += w * mapping.value(i)?.level_cut(r)?.support(u)?;
    }
    Ok(total)
}

/// The level-`r` integral `Σ_{ω ∈ set} μ({ω}) · Γ̃_r(ω)` as one convex
/// body. Zero-weight atoms are skipped outright (never scaled-then-added),
/// and the empty set yields the exact singleton `{0}`.
pub fn level_integral(
    mapping: &FuzzyMapping,
    set: &MeasurableSet,
    r: f64,
    config: &IntegralConfig,
) -> Result<ConvexBody> {
    config.validate()?;
    let mut acc = ConvexBody::origin(mapping.dims())?;
    for i in set.iter() {
        let w = mapping.space().weight(i)?;
        if w == 0.0 {
            continue;
        }
        let term = mapping.value(i)?.level_cut(r)?.scale(w)?;
        acc = acc.minkowski_add(&term)?;
        if config.prune && acc.vertices().len() > PRUNE_TRIGGER {
            acc = acc.pruned(config.geometry_tol)?;
        }
    }
    Ok(acc)
}

/// One entry of a residual report: the gap of the defining identity at a
/// given stored level and grid direction.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualRow {
    pub level: f64,
    pub direction: usize,
    pub residual: f64,
}

/// Residuals of `|s(u, value_r) − Σ_ω μ({ω})·s(u, Γ̃_r(ω))|` over every
/// stored level × grid direction.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub rows: Vec<ResidualRow>,
    pub max: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A fuzzy integral with its residual report.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResult {
    pub value: FuzzyNumber,
    pub residuals: ResidualReport,
}

/// The level-wise set-valued integral of `mapping` over `set`, assembled
/// on the union level grid and verified direction-by-direction against the
/// scalar integral of support functions.
pub fn fuzzy_pettis_integral(
    mapping: &FuzzyMapping,
    set: &MeasurableSet,
    grid: &DirectionGrid,
    config: &IntegralConfig,
) -> Result<IntegralResult> {
    config.validate()?;
    if grid.dims() != mapping.dims() {
        return Err(Error::DimensionMismatch { expected: mapping.dims(), found: grid.dims() });
    }
    let levels = mapping.level_grid(set)?;
    let mut bodies = Vec::with_capacity(levels.len());
    for &r in &levels {
        bodies.push(level_integral(mapping, set, r, config)?);
    }
    // Validating constructor: a nesting violation here would mean the
    // accumulation itself broke monotonicity, and must surface.
    let value = FuzzyNumber::from_level_family(levels.clone(), bodies)?;

    let mut rows = Vec::with_capacity(levels.len() * grid.len());
    let mut max = 0.0f64;
    for (li, &r) in levels.iter().enumerate() {
        let body = &value.bodies()[li];
        for (di, u) in grid.iter().enumerate() {
            let lhs = body.support(u)?;
            let rhs = scalar_integral(mapping, set, u, r)?;
            let residual = float::abs(lhs - rhs);
            max = f64::max(max, residual);
            rows.push(ResidualRow { level: r, direction: di, residual });
        }
    }
    let pass = max <= config.support_tol;
    Ok(IntegralResult {
        value,
        residuals: ResidualReport { rows, max, tol: config.support_tol, pass },
    })
}

/// The point integral `Σ_{ω ∈ set} μ({ω}) · f(ω)` of a selection.
pub fn selection_integral(
    mapping: &FuzzyMapping,
    selection: &Selection,
    set: &MeasurableSet,
) -> Result<Point> {
    let mut total = alloc::vec![0.0; mapping.dims()];
    for i in set.iter() {
        let w = mapping.space().weight(i)?;
        if w == 0.0 {
            continue;
        }
        let p = selection.point(i)?;
        for j in 0..total.len() {
            total[j] += w * p[j];
        }
    }
    Ok(total)
}

/// Outcome of one scalar check: a residual against its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub residual: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckOutcome {
    fn new(residual: f64, bound: f64) -> Self {
        Self { residual, bound, pass: residual <= bound }
    }

    fn flag(ok: bool) -> Self {
        Self { residual: if ok { 0.0 } else { 1.0 }, bound: 0.0, pass: ok }
    }
}

/// Origin-membership check of the remainder at one atom and level.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMembershipRow {
    pub atom: usize,
    pub level: f64,
    pub contains_origin: bool,
}

/// Support nonnegativity of the remainder at one atom and direction
/// (minimum taken across stored levels).
#[derive(Debug, Clone, PartialEq)]
pub struct SupportRow {
    pub atom: usize,
    pub direction: usize,
    pub min_support: f64,
    pub nonneg: bool,
}

/// Per-atom reconstruction residual `d_H(G̃(ω) ⊕ χ_{f(ω)}, Γ̃(ω))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomResidualRow {
    pub atom: usize,
    pub residual: f64,
}

/// The decomposition `Γ̃ = G̃ ⊕ χ_f` around a selection, with its checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    /// The remainder mapping `G̃(ω) = Γ̃(ω) − f(ω)` (every level body
    /// translated by the selection point).
    pub remainder: FuzzyMapping,
    /// Echo of the selection points `f(ω)`.
    pub selection_points: Vec<Point>,
    /// `0 ∈ G̃_r(ω)` at every atom and stored level.
    pub zero_membership: Vec<ZeroMembershipRow>,
    /// `s(u, G̃_r(ω)) ≥ 0` for every grid direction (min across levels).
    pub support_rows: Vec<SupportRow>,
    /// Translating back recovers the original mapping, atom by atom.
    pub reconstruction: Vec<AtomResidualRow>,
    /// `d_H(∫ Γ̃, ∫ G̃ ⊕ χ_{∫ f})` over the full space.
    pub split_residual: CheckOutcome,
    pub pass: bool,
}

/// Decomposes `Γ̃` around a selection valid at level 1 (hence at every
/// level, by nesting): `Γ̃(ω) = G̃(ω) ⊕ χ_{f(ω)}` with `0 ∈ G̃_r(ω)` and
/// nonnegative supports, and verifies that the integral splits the same
/// way: `∫ Γ̃ = ∫ G̃ ⊕ χ_{∫ f dμ}`.
pub fn decompose(
    mapping: &FuzzyMapping,
    selection: &Selection,
    grid: &DirectionGrid,
    config: &IntegralConfig,
) -> Result<DecompositionResult> {
    config.validate()?;
    if grid.dims() != mapping.dims() {
        return Err(Error::DimensionMismatch { expected: mapping.dims(), found: grid.dims() });
    }
    let atoms = mapping.space().len();
    if selection.points().len() != atoms {
        return Err(Error::ValueCountMismatch { atoms, values: selection.points().len() });
    }
    // The decomposition needs the selection inside the *top* level set of
    // every atom; a selection validated at a lower level may stick out.
    for i in 0..atoms {
        let p = selection.point(i)?;
        if !mapping.value(i)?.level_cut(1.0)?.contains(p, config.solver_tol)? {
            return Err(Error::NotASelection { atom: i });
        }
    }

    let mut remainder_values = Vec::with_capacity(atoms);
    for i in 0..atoms {
        let value = mapping.value(i)?;
        let p = selection.point(i)?;
        let bodies: Result<Vec<ConvexBody>> =
            value.bodies().iter().map(|b| b.translate_by_negative(p)).collect();
        remainder_values.push(FuzzyNumber::from_level_family(value.levels().to_vec(), bodies?)?);
    }
    let remainder = FuzzyMapping::new(mapping.space().clone(), remainder_values)?;

    let mut zero_membership = Vec::new();
    let mut all_zero = true;
    for i in 0..atoms {
        let value = remainder.value(i)?;
        let origin = alloc::vec![0.0; mapping.dims()];
        for (li, &r) in value.levels().iter().enumerate() {
            let ok = value.bodies()[li].contains(&origin, config.solver_tol)?;
            all_zero &= ok;
            zero_membership.push(ZeroMembershipRow { atom: i, level: r, contains_origin: ok });
        }
    }

    let mut support_rows = Vec::new();
    let mut all_nonneg = true;
    for i in 0..atoms {
        let value = remainder.value(i)?;
        for (di, u) in grid.iter().enumerate() {
            let mut min_support = f64::INFINITY;
            for body in value.bodies() {
                min_support = f64::min(min_support, body.support(u)?);
            }
            let nonneg = min_support >= -config.support_tol;
            all_nonneg &= nonneg;
            support_rows.push(SupportRow { atom: i, direction: di, min_support, nonneg });
        }
    }

    let mut reconstruction = Vec::with_capacity(atoms);
    let mut max_reconstruction = 0.0f64;
    for i in 0..atoms {
        let back = remainder.value(i)?.add(&FuzzyNumber::from_point(selection.point(i)?.clone())?)?;
        let residual = back.hausdorff(mapping.value(i)?, config.solver_tol)?;
        max_reconstruction = f64::max(max_reconstruction, residual);
        reconstruction.push(AtomResidualRow { atom: i, residual });
    }

    let full = mapping.space().full_set();
    let whole = fuzzy_pettis_integral(mapping, &full, grid, config)?;
    let remainder_integral = fuzzy_pettis_integral(&remainder, &full, grid, config)?;
    let point_part = FuzzyNumber::from_point(selection_integral(mapping, selection, &full)?)?;
    let recombined = remainder_integral.value.add(&point_part)?;
    let split = whole.value.hausdorff(&recombined, config.solver_tol)?;
    let split_residual = CheckOutcome::new(split, config.support_tol);

    let pass = all_zero
        && all_nonneg
        && max_reconstruction <= config.geometry_tol
        && split_residual.pass
        && whole.residuals.pass
        && remainder_integral.residuals.pass;

    Ok(DecompositionResult {
        remainder,
        selection_points: selection.points().to_vec(),
        zero_membership,
        support_rows,
        reconstruction,
        split_residual,
        pass,
    })
}

/// Linearity residuals of the integral in the integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearityReport {
    /// `d_H(∫ (F ⊕ G), ∫ F ⊕ ∫ G)`.
    pub additive: CheckOutcome,
    /// `d_H(∫ (λ·F), λ·∫ F)`.
    pub homogeneous: CheckOutcome,
    pub pass: bool,
}

/// Checks additivity and nonnegative homogeneity of the integral over
/// `set` for mappings `f` and `g` on one shared space.
pub fn scalar_linearity_check(
    f: &FuzzyMapping,
    g: &FuzzyMapping,
    lambda: f64,
    set: &MeasurableSet,
    grid: &DirectionGrid,
    config: &IntegralConfig,
) -> Result<LinearityReport> {
    config.validate()?;
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::BadParameter("lambda must be finite and nonnegative"));
    }

    let sum_map = f.add(g)?;
    let int_sum = fuzzy_pettis_integral(&sum_map, set, grid, config)?.value;
    let int_f = fuzzy_pettis_integral(f, set, grid, config)?.value;
    let int_g = fuzzy_pettis_integral(g, set, grid, config)?.value;
    let mut sum_int = int_f.add(&int_g)?;
    if config.prune {
        sum_int = sum_int.pruned(config.geometry_tol)?;
    }
    let additive = CheckOutcome::new(int_sum.hausdorff(&sum_int, config.solver_tol)?, config.support_tol);

    let scaled_map = f.scale(lambda)?;
    let int_scaled = fuzzy_pettis_integral(&scaled_map, set, grid, config)?.value;
    let scaled_int = int_f.scale(lambda)?;
    let homogeneous =
        CheckOutcome::new(int_scaled.hausdorff(&scaled_int, config.solver_tol)?, config.support_tol);

    Ok(LinearityReport { additive, homogeneous, pass: additive.pass && homogeneous.pass })
}

/// Gap of one geometric-tail prefix against its convergence bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TailRow {
    /// Number of leading atoms in the partial integral.
    pub prefix: usize,
    /// `d_H(partial, full)`.
    pub gap: f64,
    /// The geometric tail bound for this prefix.
    pub bound: f64,
    pub pass: bool,
}

/// Report of the set-function behaviour of `E ↦ ∫_E Γ̃ dμ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVerification {
    /// `∫_∅ = θ`, structurally: single level 1, single vertex 0.
    pub empty_is_null: CheckOutcome,
    /// `∫_{A ∪ B ∪ …} = ∫_A ⊕ ∫_B ⊕ …` for the given disjoint parts.
    pub partition_additivity: CheckOutcome,
    /// Each level integral over ∅ is exactly `{0}`.
    pub level_empty: CheckOutcome,
    /// Level antitonicity of the integral: cuts shrink as `r` grows.
    pub level_monotone: CheckOutcome,
    /// Level cuts are constant on the half-open steps of the stored grid.
    pub level_step_stability: CheckOutcome,
    /// Geometric-tail convergence gaps (empty unless a family is given).
    pub tail_rows: Vec<TailRow>,
    /// Order independence of the tail accumulation.
    pub tail_permutation: CheckOutcome,
    pub pass: bool,
}

/// Verifies the measure-like properties of the integral: null empty set,
/// finite additivity over `partition` (pairwise disjoint sets), level
/// monotonicity and step stability on the partition's union, and — when a
/// tail family is supplied — geometric convergence of partial integrals
/// plus permutation invariance of the accumulation order.
pub fn integral_measure_verify(
    mapping: &FuzzyMapping,
    partition: &[MeasurableSet],
    tail: Option<&GeometricTailFamily>,
    grid: &DirectionGrid,
    config: &IntegralConfig,
) -> Result<MeasureVerification> {
    config.validate()?;
    for i in 0..partition.len() {
        for j in (i + 1)..partition.len() {
            if !partition[i].is_disjoint(&partition[j]) {
                return Err(Error::BadParameter("partition parts must be pairwise disjoint"));
            }
        }
    }

    // Empty set: the integral must be θ *structurally*.
    let empty = MeasurableSet::empty();
    let empty_int = fuzzy_pettis_integral(mapping, &empty, grid, config)?.value;
    let empty_ok = empty_int.levels() == [1.0]
        && empty_int.bodies().len() == 1
        && empty_int.bodies()[0].vertices() == [alloc::vec![0.0; mapping.dims()]];
    let empty_is_null = CheckOutcome::flag(empty_ok);

    let level_empty = {
        let mut ok = true;
        for &r in &mapping.level_grid(&mapping.space().full_set())? {
            let body = level_integral(mapping, &empty, r, config)?;
            ok &= body.vertices() == [alloc::vec![0.0; mapping.dims()]];
        }
        CheckOutcome::flag(ok)
    };

    // Finite additivity over the partition.
    let mut union = MeasurableSet::empty();
    for part in partition {
        union = union.union(part);
    }
    let whole = fuzzy_pettis_integral(mapping, &union, grid, config)?.value;
    let partition_additivity = if partition.is_empty() {
        CheckOutcome::new(0.0, config.support_tol)
    } else {
        let mut acc = FuzzyNumber::null(mapping.dims())?;
        for part in partition {
            acc = acc.add(&fuzzy_pettis_integral(mapping, part, grid, config)?.value)?;
            if config.prune {
                acc = acc.pruned(config.geometry_tol)?;
            }
        }
        CheckOutcome::new(whole.hausdorff(&acc, config.solver_tol)?, config.support_tol)
    };

    // Level cuts of the integral shrink as the level grows.
    let level_monotone = {
        let mut worst = 0.0f64;
        for i in 1..whole.levels().len() {
            let excess =
                whole.bodies()[i].hausdorff_directed(&whole.bodies()[i - 1], config.solver_tol)?;
            worst = f64::max(worst, excess);
        }
        CheckOutcome::new(worst, config.solver_tol)
    };

    // Right-closed step semantics: probing strictly inside a step must hit
    // the same stored body (identity, not just small distance).
    let level_step_stability = {
        let mut ok = true;
        let levels = whole.levels();
        for i in 0..levels.len() {
            let lo = if i == 0 { 0.0 } else { levels[i - 1] };
            let hi = levels[i];
            for k in 1..=3u32 {
                let r = lo + (hi - lo) * (k as f64) / 4.0;
                if !(r > lo && r <= hi) {
                    continue;
                }
                ok &= core::ptr::eq(whole.level_cut(r)?, &whole.bodies()[i]);
            }
            ok &= core::ptr::eq(whole.level_cut(hi)?, &whole.bodies()[i]);
        }
        CheckOutcome::flag(ok)
    };

    // Geometric tail: partial integrals converge inside the known bound,
    // and the accumulation order does not matter.
    let mut tail_rows = Vec::new();
    let mut tail_permutation = CheckOutcome::new(0.0, config.support_tol);
    if let Some(family) = tail {
        let fam_map = family.mapping();
        if fam_map.dims() != grid.dims() {
            return Err(Error::DimensionMismatch {
                expected: fam_map.dims(),
                found: grid.dims(),
            });
        }
        let n = family.len();
        let full_set = fam_map.space().full_set();
        let full_int = fuzzy_pettis_integral(fam_map, &full_set, grid, config)?.value;
        for prefix in 1..n {
            let set = MeasurableSet::from_indices(0..prefix);
            let partial = fuzzy_pettis_integral(fam_map, &set, grid, config)?.value;
            let gap = partial.hausdorff(&full_int, config.solver_tol)?;
            // The bound is mathematical; the comparison gets the solver
            // tolerance as slack so rounding cannot fail a true statement.
            let bound = family.tail_bound(prefix) + config.solver_tol;
            tail_rows.push(TailRow { prefix, gap, bound, pass: gap <= bound });
        }

        // Order invariance is exact at the vertex level (Minkowski sums
        // commute), so the residual is measured as a support gap over the
        // verification grid: supports are plain dot-product maxima, immune
        // to the nearest-point degeneracies that many-atom accumulations
        // provoke, and the perturbations that remain (float reassociation,
        // pruning) are uniformly small in every direction.
        let reversed = reverse_mapping(fam_map)?;
        let rev_int =
            fuzzy_pettis_integral(&reversed, &reversed.space().full_set(), grid, config)?.value;
        tail_permutation =
            CheckOutcome::new(fuzzy_support_gap(&full_int, &rev_int, grid)?, config.support_tol);
    }

    let pass = empty_is_null.pass
        && partition_additivity.pass
        && level_empty.pass
        && level_monotone.pass
        && level_step_stability.pass
        && tail_rows.iter().all(|r| r.pass)
        && tail_permutation.pass;

    Ok(MeasureVerification {
        empty_is_null,
        partition_additivity,
        level_empty,
        level_monotone,
        level_step_stability,
        tail_rows,
        tail_permutation,
        pass,
    })
}

/// Largest support difference between two fuzzy numbers over the grid
/// directions and the union of their stored levels. A grid-restricted
/// pseudometric: zero on the grid certifies agreement only along probed
/// directions, which suffices for identities whose perturbations are
/// uniformly bounded across all directions.
fn fuzzy_support_gap(a: &FuzzyNumber, b: &FuzzyNumber, grid: &DirectionGrid) -> Result<f64> {
    let mut levels: Vec<f64> = a.levels().iter().chain(b.levels()).copied().collect();
    levels.sort_by(|x, y| x.partial_cmp(y).expect("stored levels are finite"));
    levels.dedup();
    let mut worst = 0.0f64;
    for &r in &levels {
        let cut_a = a.level_cut(r)?;
        let cut_b = b.level_cut(r)?;
        for u in grid.iter() {
            worst = f64::max(worst, float::abs(cut_a.support(u)? - cut_b.support(u)?));
        }
    }
    Ok(worst)
}

/// The same mapping with its atom order reversed (ids, weights, values) —
/// integrating it accumulates the Minkowski sums in the opposite order.
fn reverse_mapping(mapping: &FuzzyMapping) -> Result<FuzzyMapping> {
    let space = mapping.space();
    let ids: Vec<_> = space.atom_ids().iter().rev().cloned().collect();
    let weights: Vec<_> = space.weights().iter().rev().copied().collect();
    let values: Vec<_> = mapping.values().iter().rev().cloned().collect();
    FuzzyMapping::new(crate::measurespace::FiniteMeasureSpace::new(ids, weights)?, values)
}

/// The conditional core at level `r` over `E`: the closed convex hull of
/// `⋃_{ω ∈ E, μ({ω}) > 0} Γ̃_r(ω)` — the set of values that level-`r`
/// selections can realize on `E`, up to convexification. Undefined
/// ([`Error::NullSet`]) when `E` has measure zero.
pub fn core(mapping: &FuzzyMapping, set: &MeasurableSet, r: f64) -> Result<ConvexBody> {
    let mut acc: Option<ConvexBody> = None;
    for i in set.iter() {
        let w = mapping.space().weight(i)?;
        if w == 0.0 {
            continue;
        }
        let cut = mapping.value(i)?.level_cut(r)?;
        acc = Some(match acc {
            None => cut.clone(),
            Some(prev) => prev.hull_union(cut)?,
        });
    }
    acc.ok_or(Error::NullSet)
}

/// Whether `g` is dominated by `gamma`: `G̃_r(ω) ⊆ Γ̃_r(ω)` at every atom
/// and every merged stored level (level cuts are constant in between).
pub fn dominates(g: &FuzzyMapping, gamma: &FuzzyMapping, tol: f64) -> Result<bool> {
    Ok(dominance_violation(g, gamma, tol)?.is_none())
}

/// First atom at which dominance fails, if any.
fn dominance_violation(g: &FuzzyMapping, gamma: &FuzzyMapping, tol: f64) -> Result<Option<usize>> {
    if g.space() != gamma.space() {
        return Err(Error::SpaceMismatch);
    }
    if g.dims() != gamma.dims() {
        return Err(Error::DimensionMismatch { expected: gamma.dims(), found: g.dims() });
    }
    for i in 0..g.space().len() {
        let gv = g.value(i)?;
        let cv = gamma.value(i)?;
        let levels = crate::fuzzynum::merge_levels(gv.levels(), cv.levels());
        for &r in &levels {
            if !gv.level_cut(r)?.subset_of(cv.level_cut(r)?, tol)? {
                return Ok(Some(i));
            }
        }
    }
    Ok(None)
}

/// One core compatibility row: at (`set`, `level`), the dominated
/// mapping's core exists and sits inside the dominating mapping's core.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreRow {
    pub set: MeasurableSet,
    pub level: f64,
    pub nonempty: bool,
    pub contained: bool,
}

/// Report of [`core_nonempty_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoreReport {
    pub rows: Vec<CoreRow>,
    pub pass: bool,
}

/// For a dominated pair `g ⊑ gamma`, checks over each given set (skipping
/// null ones — cores are undefined there) and level that `core(g)` is
/// nonempty and contained in `core(gamma)`. Errors with
/// [`Error::NotDominated`] if the dominance premise fails.
pub fn core_nonempty_check(
    gamma: &FuzzyMapping,
    g: &FuzzyMapping,
    sets: &[MeasurableSet],
    levels: &[f64],
    config: &IntegralConfig,
) -> Result<CoreReport> {
    config.validate()?;
    if let Some(atom) = dominance_violation(g, gamma, config.solver_tol)? {
        return Err(Error::NotDominated { atom });
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for set in sets {
        if gamma.space().measure_of(set)? == 0.0 {
            continue;
        }
        for &r in levels {
            let core_g = core(g, set, r)?;
            let core_gamma = core(gamma, set, r)?;
            let nonempty = !core_g.vertices().is_empty();
            let contained = core_g.subset_of(&core_gamma, config.solver_tol)?;
            pass &= nonempty && contained;
            rows.push(CoreRow { set: set.clone(), level: r, nonempty, contained });
        }
    }
    Ok(CoreReport { rows, pass })
}

/// Support-side identity for cores: `s(u, core) = max_{ω ∈ E, w>0}
/// s(u, Γ̃_r(ω))` for every grid direction. Returns the worst residual —
/// an independent route to the same object that never builds the union.
pub fn core_support_residual(
    mapping: &FuzzyMapping,
    set: &MeasurableSet,
    r: f64,
    grid: &DirectionGrid,
) -> Result<f64> {
    let body = core(mapping, set, r)?;
    let mut worst = 0.0f64;
    for u in grid.iter() {
        let mut best = f64::NEG_INFINITY;
        for i in set.iter() {
            if mapping.space().weight(i)? == 0.0 {
                continue;
            }
            best = f64::max(best, mapping.value(i)?.level_cut(r)?.support(u)?);
        }
        worst = f64::max(worst, float::abs(body.support(u)? - best));
    }
    Ok(worst)
}

/// Largest coordinate deviation between two points — convenience for
/// point-valued consistency checks.
pub fn point_deviation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let mut worst = 0.0f64;
    for i in 0..a.len() {
        worst = f64::max(worst, float::abs(a[i] - b[i]));
    }
    Ok(worst)
}
