//! Scenario files: the single input format of the command line.
//!
//! A scenario is a human-readable JSON document describing one fuzzy
//! mapping on a finite measure space:
//!
//! ```json
//! {
//!   "dims": 2,
//!   "atoms": [
//!     { "id": "a", "weight": 1.0, "value": [
//!       { "level": 0.5, "vertices": [[-2.0,-2.0],[2.0,-2.0],[2.0,2.0],[-2.0,2.0]] },
//!       { "level": 1.0, "vertices": [[-1.0,-1.0],[1.0,-1.0],[1.0,1.0],[-1.0,1.0]] }
//!     ]}
//!   ],
//!   "grid": 64,
//!   "tolerances": { "solver": 1e-9, "support": 1e-9, "geometry": 1e-12 }
//! }
//! ```
//!
//! `grid` and `tolerances` are optional. Levels may appear in any order in
//! the file (they are sorted on load); every other invariant — levels in
//! (0, 1] ending at 1, nesting of level bodies, matching dimensions,
//! nonnegative weights, distinct atom ids — is enforced by the library
//! constructors, and violations abort with exit code 2 naming the atom.

use std::fs;
use std::path::Path;

use fuzzpettis_core::{ConvexBody, FiniteMeasureSpace, FuzzyMapping, FuzzyNumber, IntegralConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// One `(level, vertex list)` pair of a level family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelSpec {
    pub level: f64,
    pub vertices: Vec<Vec<f64>>,
}

/// One atom: its id, weight, and fuzzy value as a level family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomSpec {
    pub id: String,
    pub weight: f64,
    pub value: Vec<LevelSpec>,
}

/// Optional per-scenario tolerance overrides.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ToleranceSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<f64>,
}

/// The scenario document as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub dims: usize,
    pub atoms: Vec<AtomSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceSpec>,
}

/// An optional side config file: `{ "grid": 64, "tol": 1e-9, "prune": true }`.
/// Flags override it; it overrides the scenario's own `tolerances`.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ConfigFile {
    #[serde(default)]
    pub grid: Option<usize>,
    /// Sets both the solver and support tolerances.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub prune: Option<bool>,
}

/// A loaded, fully validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub mapping: FuzzyMapping,
    /// Direction-grid size requested by the file, if any.
    pub grid: Option<usize>,
    pub tolerances: ToleranceSpec,
}

impl Scenario {
    pub fn dims(&self) -> usize {
        self.mapping.dims()
    }
}

/// Reads and validates a scenario document.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: ScenarioFile =
        serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))?;
    build_scenario(file)
}

/// Validates a parsed scenario document into library types.
pub fn build_scenario(file: ScenarioFile) -> Result<Scenario> {
    if file.atoms.is_empty() {
        return Err(CliError::Invalid(String::from(
            "scenario field `atoms`: needs at least one atom",
        )));
    }
    let mut ids = Vec::with_capacity(file.atoms.len());
    let mut weights = Vec::with_capacity(file.atoms.len());
    let mut values = Vec::with_capacity(file.atoms.len());
    for atom in &file.atoms {
        ids.push(atom.id.clone());
        weights.push(atom.weight);
        values.push(build_value(file.dims, atom)?);
    }
    let space = FiniteMeasureSpace::new(ids, weights)
        .map_err(|e| CliError::Invalid(format!("scenario field `atoms`: {e}")))?;
    let mapping = FuzzyMapping::new(space, values)
        .map_err(|e| CliError::Invalid(format!("scenario field `atoms`: {e}")))?;
    Ok(Scenario { mapping, grid: file.grid, tolerances: file.tolerances.unwrap_or_default() })
}

/// Builds one atom's fuzzy value, naming the atom in any error.
fn build_value(dims: usize, atom: &AtomSpec) -> Result<FuzzyNumber> {
    let context = |e: fuzzpettis_core::Error| {
        CliError::Invalid(format!("atom `{}` field `value`: {e}", atom.id))
    };
    if atom.value.is_empty() {
        return Err(CliError::Invalid(format!(
            "atom `{}` field `value`: needs at least one level",
            atom.id
        )));
    }
    // Levels may be listed in any order; sort before validating. NaN
    // levels would poison the sort, so reject them first.
    let mut specs: Vec<&LevelSpec> = atom.value.iter().collect();
    for spec in &specs {
        if !spec.level.is_finite() {
            return Err(context(fuzzpettis_core::Error::LevelRange { value: spec.level }));
        }
    }
    specs.sort_by(|a, b| a.level.partial_cmp(&b.level).expect("finite levels"));
    let mut levels = Vec::with_capacity(specs.len());
    let mut bodies = Vec::with_capacity(specs.len());
    for spec in specs {
        levels.push(spec.level);
        bodies.push(ConvexBody::new(dims, spec.vertices.clone()).map_err(context)?);
    }
    FuzzyNumber::from_level_family(levels, bodies).map_err(context)
}

/// Serializes a fuzzy number back to the on-disk level-family shape.
pub fn level_specs(value: &FuzzyNumber) -> Vec<LevelSpec> {
    value
        .levels()
        .iter()
        .zip(value.bodies())
        .map(|(&level, body)| LevelSpec { level, vertices: body.vertices().to_vec() })
        .collect()
}

/// Wraps one fuzzy number as a single-atom scenario document (the
/// integral-as-scenario round trip).
pub fn single_atom_scenario(id: &str, value: &FuzzyNumber) -> ScenarioFile {
    ScenarioFile {
        dims: value.dims(),
        atoms: vec![AtomSpec {
            id: String::from(id),
            weight: 1.0,
            value: level_specs(value),
        }],
        grid: None,
        tolerances: None,
    }
}

/// Reads the optional side config file.
pub fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

/// Merges tolerance/grid settings. Precedence, lowest to highest:
/// library defaults, the scenario's `tolerances` block, the config file,
/// command-line flags (`--tol` sets solver and support; `--grid`;
/// `--prune`).
#[derive(Debug, Clone)]
pub struct Settings {
    pub config: IntegralConfig,
    pub grid: Option<usize>,
}

pub fn resolve_settings(
    scenario: &Scenario,
    config_file: Option<&ConfigFile>,
    flag_tol: Option<f64>,
    flag_grid: Option<usize>,
    flag_prune: bool,
) -> Result<Settings> {
    let mut cfg = IntegralConfig::default();
    if let Some(s) = scenario.tolerances.solver {
        cfg.solver_tol = s;
    }
    if let Some(s) = scenario.tolerances.support {
        cfg.support_tol = s;
    }
    if let Some(g) = scenario.tolerances.geometry {
        cfg.geometry_tol = g;
    }
    let mut grid = scenario.grid;
    if let Some(file) = config_file {
        if let Some(t) = file.tol {
            cfg.solver_tol = t;
            cfg.support_tol = t;
        }
        if let Some(g) = file.grid {
            grid = Some(g);
        }
        if let Some(p) = file.prune {
            cfg.prune = p;
        }
    }
    if let Some(t) = flag_tol {
        cfg.solver_tol = t;
        cfg.support_tol = t;
    }
    if let Some(g) = flag_grid {
        grid = Some(g);
    }
    if flag_prune {
        cfg.prune = true;
    }
    for (name, tol) in [
        ("solver", cfg.solver_tol),
        ("support", cfg.support_tol),
        ("geometry", cfg.geometry_tol),
    ] {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(CliError::Invalid(format!(
                "tolerance `{name}`: must be finite and positive, got {tol}"
            )));
        }
    }
    Ok(Settings { config: cfg, grid })
}

/// Parses a `--set` specification: `all` or a comma-separated list of
/// atom ids.
pub fn parse_set(
    spec: &str,
    space: &FiniteMeasureSpace,
) -> Result<fuzzpettis_core::MeasurableSet> {
    if spec == "all" {
        return Ok(space.full_set());
    }
    let mut indices = Vec::new();
    for id in spec.split(',') {
        let id = id.trim();
        if id.is_empty() {
            return Err(CliError::Invalid(format!(
                "flag `--set`: empty atom id in `{spec}`"
            )));
        }
        match space.index_of(id) {
            Some(i) => indices.push(i),
            None => {
                return Err(CliError::Invalid(format!(
                    "flag `--set`: unknown atom id `{id}`"
                )))
            }
        }
    }
    Ok(fuzzpettis_core::MeasurableSet::from_indices(indices))
}

/// Parses a `--direction` specification (comma-separated coordinates),
/// normalizing it and warning on stderr when the input was far from unit
/// length.
pub fn parse_direction(spec: &str, dims: usize) -> Result<fuzzpettis_core::Direction> {
    let coords: std::result::Result<Vec<f64>, _> =
        spec.split(',').map(|c| c.trim().parse::<f64>()).collect();
    let coords = coords.map_err(|e| {
        CliError::Invalid(format!("flag `--direction`: `{spec}` is not numeric: {e}"))
    })?;
    if coords.len() != dims {
        return Err(CliError::Invalid(format!(
            "flag `--direction`: expected {dims} coordinates, got {}",
            coords.len()
        )));
    }
    let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-6 {
        eprintln!(
            "warning: direction `{spec}` has norm {norm}; normalizing to unit length"
        );
    }
    fuzzpettis_core::Direction::normalized(coords)
        .map_err(|e| CliError::Invalid(format!("flag `--direction`: {e}")))
}
