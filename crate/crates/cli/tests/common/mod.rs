//! Deterministic random-instance generator shared by the acceptance
//! criteria. Levels come from a quantized palette and nesting is built
//! by inflating the top body about its vertex centroid, so every
//! generated family is exactly nested by convexity — no tolerance games.

use fuzzpettis_core::{ConvexBody, FiniteMeasureSpace, FuzzyMapping, FuzzyNumber};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Lower membership levels available below the mandatory top level 1.
pub const PALETTE: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// A random convex body with `1..=max_verts` vertices in `[-3, 3]^dims`.
pub fn random_body(rng: &mut ChaCha8Rng, dims: usize, max_verts: usize) -> ConvexBody {
    let count = rng.gen_range(1..=max_verts);
    let verts: Vec<Vec<f64>> =
        (0..count).map(|_| (0..dims).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
    ConvexBody::new(dims, verts).expect("generated vertices are finite")
}

/// Inflates `body` about its vertex centroid by `factor >= 1`; the result
/// contains the original exactly (convexity of the hull).
pub fn inflate(body: &ConvexBody, factor: f64) -> ConvexBody {
    let center = body.vertex_centroid();
    let verts: Vec<Vec<f64>> = body
        .vertices()
        .iter()
        .map(|v| v.iter().zip(&center).map(|(c, g)| g + factor * (c - g)).collect())
        .collect();
    ConvexBody::new(body.dims(), verts).expect("inflation preserves finiteness")
}

/// A random fuzzy number: top body plus up to three strictly lower
/// palette levels, each an inflation of the top body (larger factors at
/// lower levels, so the family nests exactly).
pub fn random_fuzzy(rng: &mut ChaCha8Rng, dims: usize, max_verts: usize) -> FuzzyNumber {
    let top = random_body(rng, dims, max_verts);
    let extra = rng.gen_range(0..=3usize);
    let mut picks: Vec<f64> = Vec::new();
    while picks.len() < extra {
        let r = PALETTE[rng.gen_range(0..PALETTE.len())];
        if !picks.contains(&r) {
            picks.push(r);
        }
    }
    picks.sort_by(|a, b| a.partial_cmp(b).expect("palette levels are finite"));

    let mut factors: Vec<f64> = (0..picks.len()).map(|_| rng.gen_range(1.0..3.0)).collect();
    factors.sort_by(|a, b| b.partial_cmp(a).expect("factors are finite"));

    let mut levels = picks;
    let mut bodies: Vec<ConvexBody> = factors.iter().map(|&f| inflate(&top, f)).collect();
    levels.push(1.0);
    bodies.push(top);
    FuzzyNumber::from_level_family(levels, bodies).expect("construction nests by design")
}

/// A random mapping: `1..=max_atoms` atoms, roughly one weight in ten
/// zero, values from [`random_fuzzy`].
pub fn random_mapping(
    rng: &mut ChaCha8Rng,
    dims: usize,
    max_atoms: usize,
    max_verts: usize,
) -> FuzzyMapping {
    let atoms = rng.gen_range(1..=max_atoms);
    let ids: Vec<String> = (0..atoms).map(|i| format!("w{i}")).collect();
    let weights: Vec<f64> =
        (0..atoms).map(|_| if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.05..2.0) }).collect();
    let values: Vec<FuzzyNumber> =
        (0..atoms).map(|_| random_fuzzy(rng, dims, max_verts)).collect();
    let space = FiniteMeasureSpace::new(ids, weights).expect("generated weights are valid");
    FuzzyMapping::new(space, values).expect("one value per atom by construction")
}

/// Prints the one-line verdict for a criterion and panics with the
/// collected violations if any.
pub fn report(name: &str, violations: &[String]) {
    let pass = violations.is_empty();
    println!("ACCEPTANCE {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(
        pass,
        "acceptance criterion `{name}` failed with {} violations:\n{}",
        violations.len(),
        violations.join("\n")
    );
}
