//! Acceptance gate: one test per criterion, each printing
//! `ACCEPTANCE <name>: PASS|FAIL` (visible under `--nocapture`; the
//! panic message carries the violations either way).

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use common::{inflate, random_body, random_fuzzy, random_mapping, report};
use fuzzpettis_core::integral::{
    core, core_nonempty_check, core_support_residual, decompose, fuzzy_pettis_integral,
    scalar_linearity_check,
};
use fuzzpettis_core::measurespace::geometric_tail_family;
use fuzzpettis_core::oracle::{
    oracle_hull_distance, oracle_membership, oracle_supmin_add, oracle_support,
};
use fuzzpettis_core::{
    ConvexBody, Direction, DirectionGrid, Error, FiniteMeasureSpace, FuzzyMapping, FuzzyNumber,
    IntegralConfig, MeasurableSet,
};
use fuzzpettis_cli::scenario::{build_scenario, load_scenario, single_atom_scenario, ScenarioFile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pruned_config() -> IntegralConfig {
    IntegralConfig { prune: true, ..IntegralConfig::default() }
}

fn unit_direction(rng: &mut ChaCha8Rng, dims: usize) -> Direction {
    loop {
        let coords: Vec<f64> = (0..dims).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if coords.iter().map(|c| c * c).sum::<f64>() > 0.01 {
            return Direction::normalized(coords).expect("nonzero by construction");
        }
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// 100 random scenarios in dimensions 1-3: the assembled integral matches
/// the scalar integral of supports in every direction of a 64-direction
/// grid at every stored level, within 1e-9, in at most ten seconds total.
#[test]
fn integral_support_identity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cfg = pruned_config();
    let mut violations = Vec::new();
    let started = Instant::now();
    for case in 0..100 {
        let dims = 1 + case % 3;
        let mapping = random_mapping(&mut rng, dims, 8, 10);
        let grid = DirectionGrid::with_size(dims, 64).expect("valid grid request");
        let full = mapping.space().full_set();
        match fuzzy_pettis_integral(&mapping, &full, &grid, &cfg) {
            Ok(result) => {
                if result.residuals.max > 1e-9 {
                    violations.push(format!(
                        "case {case}: residual {} exceeds 1e-9",
                        result.residuals.max
                    ));
                }
                if !result.residuals.pass {
                    violations.push(format!("case {case}: residual report flags failure"));
                }
            }
            Err(e) => violations.push(format!("case {case}: integral failed: {e}")),
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() > 10.0 {
        violations.push(format!("runtime {:.2}s exceeds the 10s budget", elapsed.as_secs_f64()));
    }
    report("integral_support_identity_random", &violations);
}

/// 100 random fuzzy numbers survive the serialize-reload round trip
/// level-for-level within 1e-12, and their cuts nest at 20 probed levels.
#[test]
fn representation_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut violations = Vec::new();
    for case in 0..100 {
        let dims = 1 + case % 3;
        let value = random_fuzzy(&mut rng, dims, 10);
        let doc = single_atom_scenario("x", &value);
        let text = serde_json::to_string(&doc).expect("serialization is infallible here");
        let reparsed: ScenarioFile =
            serde_json::from_str(&text).expect("just-serialized document parses");
        let rebuilt = match build_scenario(reparsed) {
            Ok(s) => s.mapping.value(0).expect("one atom").clone(),
            Err(e) => {
                violations.push(format!("case {case}: rebuild failed: {e}"));
                continue;
            }
        };
        match value.hausdorff(&rebuilt, 1e-10) {
            Ok(d) if d <= 1e-12 => {}
            Ok(d) => violations.push(format!("case {case}: round-trip distance {d}")),
            Err(e) => violations.push(format!("case {case}: hausdorff failed: {e}")),
        }
        for probe in 0..20 {
            let a = rng.gen_range(0.001..=1.0f64);
            let b = rng.gen_range(0.001..=1.0f64);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let lo_cut = rebuilt.level_cut(lo).expect("level in range");
            let hi_cut = rebuilt.level_cut(hi).expect("level in range");
            let orig = value.level_cut(hi).expect("level in range");
            let same = hi_cut.hausdorff(orig, 1e-10).expect("same dims");
            if same > 1e-12 {
                violations.push(format!("case {case} probe {probe}: cut drifts by {same}"));
            }
            if !hi_cut.subset_of(lo_cut, 1e-9).expect("same dims") {
                violations.push(format!("case {case} probe {probe}: cuts fail to nest"));
            }
        }
    }
    report("representation_round_trip", &violations);
}

/// Random decompositions around canonical selections: exact per-atom
/// reconstruction, the origin inside every remainder cut, nonnegative
/// remainder supports, and the integral splitting within 1e-9.
#[test]
fn decomposition_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let cfg = pruned_config();
    let mut violations = Vec::new();
    for case in 0..100 {
        let dims = 1 + case % 3;
        let mapping = random_mapping(&mut rng, dims, 8, 10);
        let grid = DirectionGrid::with_size(dims, 64).expect("valid grid request");
        let u = unit_direction(&mut rng, dims);
        let selection = mapping.canonical_selection(&u, 1.0).expect("level 1 is stored");
        let result = match decompose(&mapping, &selection, &grid, &cfg) {
            Ok(r) => r,
            Err(e) => {
                violations.push(format!("case {case}: decompose failed: {e}"));
                continue;
            }
        };
        for row in &result.reconstruction {
            if row.residual > 1e-12 {
                violations.push(format!(
                    "case {case}: atom {} reconstructs off by {}",
                    row.atom, row.residual
                ));
            }
        }
        for row in &result.zero_membership {
            if !row.contains_origin {
                violations.push(format!(
                    "case {case}: origin leaves remainder at atom {} level {}",
                    row.atom, row.level
                ));
            }
        }
        for row in &result.support_rows {
            if row.min_support < -1e-12 {
                violations.push(format!(
                    "case {case}: remainder support {} at atom {} direction {}",
                    row.min_support, row.atom, row.direction
                ));
            }
        }
        if result.split_residual.residual > 1e-9 {
            violations.push(format!(
                "case {case}: integral split residual {}",
                result.split_residual.residual
            ));
        }
    }
    report("decomposition_structure", &violations);
}

/// Measure behaviour of the integral: the empty set gives the crisp
/// origin structurally, three-part partitions add within 1e-9, and a
/// 20-atom geometric tail family (ratio one half) converges inside the
/// analytic bound with order-independent accumulation.
#[test]
fn measure_behaviour() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let cfg = pruned_config();
    let mut violations = Vec::new();
    for case in 0..30 {
        let dims = 1 + case % 3;
        let mapping = random_mapping(&mut rng, dims, 6, 6);
        let grid = DirectionGrid::with_size(dims, 32).expect("valid grid request");
        let atoms = mapping.space().len();
        let parts: Vec<MeasurableSet> = (0..3)
            .map(|k| MeasurableSet::from_indices((0..atoms).filter(|i| i % 3 == k)))
            .collect();
        let ratio = 0.5;
        let tail_atoms = 20;
        let body = mapping.value(0).expect("atom 0 exists").bodies()[0].clone();
        let family =
            geometric_tail_family(&body, ratio, tail_atoms).expect("valid tail parameters");
        let verification = match fuzzpettis_core::integral::integral_measure_verify(
            &mapping,
            &parts,
            Some(&family),
            &grid,
            &cfg,
        ) {
            Ok(v) => v,
            Err(e) => {
                violations.push(format!("case {case}: verification failed: {e}"));
                continue;
            }
        };
        if !verification.empty_is_null.pass {
            violations.push(format!("case {case}: empty-set integral is not the crisp origin"));
        }
        if verification.partition_additivity.residual > 1e-9 {
            violations.push(format!(
                "case {case}: partition additivity residual {}",
                verification.partition_additivity.residual
            ));
        }
        let max_norm = body.max_vertex_norm();
        for row in &verification.tail_rows {
            let analytic = ratio.powi(row.prefix as i32 + 1) / (1.0 - ratio) * max_norm;
            if row.gap > analytic + 1e-9 {
                violations.push(format!(
                    "case {case}: tail gap {} at prefix {} exceeds analytic bound {analytic}",
                    row.gap, row.prefix
                ));
            }
            if !row.pass {
                violations.push(format!(
                    "case {case}: tail row at prefix {} flags failure",
                    row.prefix
                ));
            }
        }
        if verification.tail_permutation.residual > 1e-9 {
            violations.push(format!(
                "case {case}: accumulation order changes the integral by {}",
                verification.tail_permutation.residual
            ));
        }
    }
    report("measure_behaviour", &violations);
}

/// Fifty random mapping pairs on shared spaces: the integral is additive
/// and nonnegatively homogeneous (lambda in {0, 1, 2.5}) within 1e-9, and
/// scaling by zero collapses the integral to the crisp origin exactly.
#[test]
fn integral_linearity() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let cfg = pruned_config();
    let mut violations = Vec::new();
    for case in 0..50 {
        let dims = 1 + case % 2;
        let f = random_mapping(&mut rng, dims, 3, 4);
        let atoms = f.space().len();
        let g_values: Vec<FuzzyNumber> =
            (0..atoms).map(|_| random_fuzzy(&mut rng, dims, 4)).collect();
        let g = FuzzyMapping::new(f.space().clone(), g_values).expect("same atom count");
        let grid = DirectionGrid::with_size(dims, 16).expect("valid grid request");
        let full = f.space().full_set();
        for lambda in [0.0, 1.0, 2.5] {
            match scalar_linearity_check(&f, &g, lambda, &full, &grid, &cfg) {
                Ok(report) => {
                    if report.additive.residual > 1e-9 {
                        violations.push(format!(
                            "case {case} lambda {lambda}: additivity residual {}",
                            report.additive.residual
                        ));
                    }
                    if report.homogeneous.residual > 1e-9 {
                        violations.push(format!(
                            "case {case} lambda {lambda}: homogeneity residual {}",
                            report.homogeneous.residual
                        ));
                    }
                }
                Err(e) => violations.push(format!("case {case} lambda {lambda}: {e}")),
            }
        }
        let zero = fuzzy_pettis_integral(&f.scale(0.0).expect("zero is valid"), &full, &grid, &cfg)
            .expect("zero mapping integrates")
            .value;
        let collapsed = zero.levels() == [1.0]
            && zero.bodies()[0].vertices() == [vec![0.0; dims]];
        if !collapsed {
            violations.push(format!("case {case}: zero scaling fails to collapse structurally"));
        }
    }
    report("integral_linearity", &violations);
}

/// Conditional cores: the support identity of the union hull within
/// 1e-9, monotone in the conditioning set, antitone in the level,
/// undefined (NULL_SET) on measure-zero sets, and nonempty dominated
/// cores across every nonempty subset of small spaces.
#[test]
fn conditional_cores() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let cfg = pruned_config();
    let mut violations = Vec::new();
    for case in 0..30 {
        let dims = 1 + case % 3;
        let mapping = random_mapping(&mut rng, dims, 6, 6);
        let space = mapping.space();
        let full = space.full_set();
        if space.measure_of(&full).expect("full set is valid") == 0.0 {
            continue;
        }
        let grid = DirectionGrid::with_size(dims, 32).expect("valid grid request");
        let levels = mapping.level_grid(&full).expect("full set is valid");

        for &r in &levels {
            match core_support_residual(&mapping, &full, r, &grid) {
                Ok(w) if w <= 1e-9 => {}
                Ok(w) => violations.push(format!("case {case}: union-hull residual {w} at {r}")),
                Err(e) => violations.push(format!("case {case}: support residual failed: {e}")),
            }
            // Brute-force comparison: pool the cut vertices of every
            // positive-weight atom and take that hull directly.
            let mut pooled: Vec<Vec<f64>> = Vec::new();
            for i in 0..space.len() {
                if space.weight(i).expect("index in range") > 0.0 {
                    let cut =
                        mapping.value(i).expect("index in range").level_cut(r).expect("in range");
                    pooled.extend(cut.vertices().iter().cloned());
                }
            }
            let union = ConvexBody::new(dims, pooled).expect("nonempty pool");
            let built = core(&mapping, &full, r).expect("positive measure");
            let d = built.hausdorff(&union, 1e-10).expect("same dims");
            if d > 1e-9 {
                violations.push(format!(
                    "case {case}: core differs from pooled hull by {d} at level {r}"
                ));
            }
        }

        let positive: Vec<usize> = (0..space.len())
            .filter(|&i| space.weight(i).expect("index in range") > 0.0)
            .collect();
        if positive.len() >= 2 {
            let small = MeasurableSet::from_indices([positive[0]]);
            let big = MeasurableSet::from_indices(positive.iter().copied());
            for &r in &levels {
                let core_small = core(&mapping, &small, r).expect("positive measure");
                let core_big = core(&mapping, &big, r).expect("positive measure");
                if !core_small.subset_of(&core_big, 1e-9).expect("same dims") {
                    violations.push(format!("case {case}: core not monotone in the set at {r}"));
                }
            }
        }
        for w in levels.windows(2) {
            let lower = core(&mapping, &full, w[0]).expect("positive measure");
            let higher = core(&mapping, &full, w[1]).expect("positive measure");
            if !higher.subset_of(&lower, 1e-9).expect("same dims") {
                violations.push(format!(
                    "case {case}: core not antitone between levels {} and {}",
                    w[0], w[1]
                ));
            }
        }

        // Dominated companion: every level body shrunk halfway toward the
        // top body's centroid stays inside the original.
        let dominated_values: Vec<FuzzyNumber> = mapping
            .values()
            .iter()
            .map(|v| {
                let center_body = v.bodies().last().expect("nonempty family");
                let center = center_body.vertex_centroid();
                let shrink = |b: &ConvexBody| {
                    let verts: Vec<Vec<f64>> = b
                        .vertices()
                        .iter()
                        .map(|p| {
                            p.iter().zip(&center).map(|(c, g)| g + 0.5 * (c - g)).collect()
                        })
                        .collect();
                    ConvexBody::new(b.dims(), verts).expect("shrink keeps finiteness")
                };
                FuzzyNumber::from_level_family(
                    v.levels().to_vec(),
                    v.bodies().iter().map(shrink).collect(),
                )
                .expect("shrinking preserves nesting")
            })
            .collect();
        let dominated =
            FuzzyMapping::new(space.clone(), dominated_values).expect("same atom count");
        let n = space.len();
        let sets: Vec<MeasurableSet> = (1u32..(1 << n))
            .map(|mask| MeasurableSet::from_indices((0..n).filter(|i| mask & (1 << i) != 0)))
            .collect();
        match core_nonempty_check(&mapping, &dominated, &sets, &levels, &cfg) {
            Ok(report) if report.pass => {}
            Ok(_) => violations.push(format!("case {case}: a dominated core is empty or escapes")),
            Err(e) => violations.push(format!("case {case}: dominated check failed: {e}")),
        }
    }

    // Measure-zero conditioning must refuse with the NULL_SET code.
    let space = FiniteMeasureSpace::new(
        vec![String::from("a"), String::from("b")],
        vec![1.0, 0.0],
    )
    .expect("valid space");
    let values = vec![
        FuzzyNumber::from_point(vec![1.0]).expect("point value"),
        FuzzyNumber::from_point(vec![2.0]).expect("point value"),
    ];
    let mapping = FuzzyMapping::new(space, values).expect("one value per atom");
    match core(&mapping, &MeasurableSet::from_indices([1]), 1.0) {
        Err(Error::NullSet) => {}
        other => violations.push(format!("measure-zero core gave {other:?} instead of NULL_SET")),
    }

    report("conditional_cores", &violations);
}

/// On every bundled well-formed fixture, the kernel agrees with the
/// brute-force oracles: support functions bitwise, membership grades
/// exactly, hull distances within solver slack, and one-dimensional
/// sup-min addition within one sampling step.
#[test]
fn oracle_agreement_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut violations = Vec::new();
    let tol = 1e-10;
    for name in ["twoatom.json", "theta.json", "pointvals.json", "nested_squares.json", "simplex3d.json"] {
        let scenario = match load_scenario(&fixture(name)) {
            Ok(s) => s,
            Err(e) => {
                violations.push(format!("{name}: failed to load: {e}"));
                continue;
            }
        };
        let mapping = &scenario.mapping;
        let dims = mapping.dims();
        let grid = DirectionGrid::with_size(dims, 16).expect("valid grid request");
        for value in mapping.values() {
            for body in value.bodies() {
                for u in grid.iter() {
                    let kernel = body.support(u).expect("dims agree");
                    let oracle = oracle_support(body, u).expect("within oracle budget");
                    if kernel.to_bits() != oracle.to_bits() {
                        violations.push(format!(
                            "{name}: support disagrees ({kernel} vs {oracle})"
                        ));
                    }
                }
                let radius = body.max_vertex_norm() + 1.0;
                for _ in 0..5 {
                    let p: Vec<f64> =
                        (0..dims).map(|_| rng.gen_range(-radius..radius)).collect();
                    let kernel = body.distance(&p, tol).expect("dims agree");
                    let oracle =
                        oracle_hull_distance(&p, body.vertices()).expect("within budget");
                    if (kernel - oracle).abs() > 1e-7 {
                        violations.push(format!(
                            "{name}: distance disagrees by {}",
                            (kernel - oracle).abs()
                        ));
                    }
                }
            }
            let radius = value.bodies()[0].max_vertex_norm() + 1.0;
            for _ in 0..5 {
                let p: Vec<f64> = (0..dims).map(|_| rng.gen_range(-radius..radius)).collect();
                let kernel = value.membership(&p, tol).expect("dims agree").value();
                let oracle = oracle_membership(value, &p, tol).expect("within budget").value();
                if kernel != oracle {
                    violations.push(format!("{name}: membership {kernel} vs oracle {oracle}"));
                }
            }
        }
        if dims == 1 && mapping.space().len() >= 2 {
            let a = mapping.value(0).expect("atom 0");
            let b = mapping.value(1).expect("atom 1");
            let sum = a.add(b).expect("same dims");
            let outer = &sum.bodies()[0];
            let axis = Direction::axis(1, 0).expect("dimension 1");
            let hi = outer.support(&axis).expect("dims agree");
            let lo = -outer.support(&axis.negated()).expect("dims agree");
            let span = (hi - lo).max(1.0);
            let step = span / 400.0;
            let queries: Vec<Vec<f64>> = (0..20)
                .map(|_| vec![rng.gen_range((lo - 0.1 * span)..(hi + 0.1 * span))])
                .collect();
            let grades =
                oracle_supmin_add(a, b, &queries, step, tol).expect("within budget");
            for (x, g) in queries.iter().zip(&grades) {
                let kernel = sum.membership(x, tol).expect("dims agree").value();
                if g.value() > kernel + 1e-12 {
                    violations.push(format!(
                        "{name}: sup-min oracle {} above kernel {kernel}",
                        g.value()
                    ));
                }
                let deep = sum
                    .membership(&[x[0] - 2.0 * step], tol)
                    .expect("dims agree")
                    .value()
                    .min(sum.membership(&[x[0] + 2.0 * step], tol).expect("dims agree").value());
                if deep > g.value() + 1e-12 {
                    violations.push(format!(
                        "{name}: sup-min oracle misses an interior grade by {}",
                        deep - g.value()
                    ));
                }
            }
        }
    }
    report("oracle_agreement_fixtures", &violations);
}

/// 200 random body pairs: the support-gap estimate never exceeds the true
/// Hausdorff distance (plus tolerance), and the iterative nearest-point
/// solver matches the affine-enumeration oracle on small instances.
#[test]
fn metric_estimates_and_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut violations = Vec::new();
    for case in 0..200 {
        let dims = 1 + case % 3;
        let a = random_body(&mut rng, dims, 10);
        let b = random_body(&mut rng, dims, 10);
        let grid = DirectionGrid::with_size(dims, 32).expect("valid grid request");
        let estimate = a.hausdorff_support_estimate(&b, &grid).expect("same dims");
        let exact = a.hausdorff(&b, 1e-10).expect("same dims");
        if estimate > exact + 1e-9 {
            violations.push(format!(
                "case {case}: estimate {estimate} exceeds true distance {exact}"
            ));
        }

        let small = random_body(&mut rng, dims, 8);
        let radius = small.max_vertex_norm() + 1.0;
        let p: Vec<f64> = (0..dims).map(|_| rng.gen_range(-radius..radius)).collect();
        let solver = small.distance(&p, 1e-10).expect("dims agree");
        let oracle = oracle_hull_distance(&p, small.vertices()).expect("within budget");
        if (solver - oracle).abs() > 1e-7 {
            violations.push(format!(
                "case {case}: solver distance differs from oracle by {}",
                (solver - oracle).abs()
            ));
        }
    }
    report("metric_estimates_and_solver", &violations);
}

/// The command-line contract: byte-identical verify output under a fixed
/// seed, exit 2 with stable code words on malformed scenarios, exit 4 on
/// unreadable paths, and integrate output that reloads as a scenario.
#[test]
fn cli_contract() {
    let mut violations = Vec::new();
    let bin = env!("CARGO_BIN_EXE_fuzzpettis");
    let dir = tempfile::tempdir().expect("temporary directory");

    let run_verify = || {
        Command::new(bin)
            .arg("verify")
            .arg(fixture("nested_squares.json"))
            .args(["--seed", "7", "--with-oracle", "--tail", "0.5", "12"])
            .output()
            .expect("binary runs")
    };
    let first = run_verify();
    let second = run_verify();
    if !first.status.success() {
        violations.push(format!(
            "verify exited with {:?}: {}",
            first.status.code(),
            String::from_utf8_lossy(&first.stderr)
        ));
    }
    if first.stdout != second.stdout {
        violations.push(String::from("verify output differs between identical runs"));
    }

    for (name, word) in [
        ("bad_nesting.json", "NESTING_VIOLATION"),
        ("bad_level_range.json", "LEVEL_RANGE"),
        ("bad_dims.json", "dimension mismatch"),
        ("bad_weight.json", "negative"),
        ("bad_syntax.json", "parse error"),
    ] {
        let out = Command::new(bin)
            .arg("integrate")
            .arg(fixture(name))
            .arg("--out")
            .arg(dir.path().join("bad"))
            .output()
            .expect("binary runs");
        if out.status.code() != Some(2) {
            violations.push(format!("{name}: exit {:?}, wanted 2", out.status.code()));
        }
        let stderr = String::from_utf8_lossy(&out.stderr);
        if !stderr.contains(word) {
            violations.push(format!("{name}: stderr lacks `{word}`: {stderr}"));
        }
    }

    let missing = Command::new(bin)
        .arg("integrate")
        .arg(dir.path().join("does_not_exist.json"))
        .output()
        .expect("binary runs");
    if missing.status.code() != Some(4) {
        violations.push(format!("missing file: exit {:?}, wanted 4", missing.status.code()));
    }

    let out_prefix = dir.path().join("ta");
    let integrate = Command::new(bin)
        .arg("integrate")
        .arg(fixture("twoatom.json"))
        .arg("--out")
        .arg(&out_prefix)
        .output()
        .expect("binary runs");
    if !integrate.status.success() {
        violations.push(format!(
            "integrate exited with {:?}: {}",
            integrate.status.code(),
            String::from_utf8_lossy(&integrate.stderr)
        ));
    }
    let emitted = dir.path().join("ta.scenario.json");
    match load_scenario(&emitted) {
        Ok(reloaded) => {
            let original = load_scenario(&fixture("twoatom.json")).expect("fixture loads");
            let grid = DirectionGrid::standard(1).expect("dimension 1");
            let expected = fuzzy_pettis_integral(
                &original.mapping,
                &original.mapping.space().full_set(),
                &grid,
                &IntegralConfig::default(),
            )
            .expect("fixture integrates")
            .value;
            let reread = reloaded.mapping.value(0).expect("single atom");
            let d = expected.hausdorff(reread, 1e-10).expect("same dims");
            if d > 1e-12 {
                violations.push(format!("emitted integral drifts from recomputation by {d}"));
            }
            let rerun = Command::new(bin)
                .arg("integrate")
                .arg(&emitted)
                .arg("--out")
                .arg(dir.path().join("rerun"))
                .output()
                .expect("binary runs");
            if !rerun.status.success() {
                violations.push(format!(
                    "emitted scenario fails to integrate: exit {:?}",
                    rerun.status.code()
                ));
            }
        }
        Err(e) => violations.push(format!("emitted scenario fails to reload: {e}")),
    }

    report("cli_contract", &violations);
}

/// The generator helpers stay honest: inflation contains the original.
#[test]
fn generator_inflation_contains_original() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for _ in 0..20 {
        let body = random_body(&mut rng, 2, 6);
        let bigger = inflate(&body, 1.0 + rng.gen_range(0.0..2.0));
        assert!(body.subset_of(&bigger, 1e-9).expect("same dims"));
    }
}
