//! Scenario files: JSON problem descriptions and their validation.
//!
//! Complex numbers are `[re, im]`; matrices are lists of rows. Unknown
//! top-level keys are rejected, as are unknown keys in nested objects.

use std::collections::BTreeSet;

use isofix_core::derivation::{CMatrix, CVector, FiniteGroup, MatrixElement, Scalars, WitnessMethod, C64};
use isofix_core::families::MatrixFamily;
use isofix_core::{FiberPermIsometry, Permutation, SupPoint};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::RunError;

pub type Complex = [f64; 2];
pub type ComplexMatrix = Vec<Vec<Complex>>;

/// Status a scenario is expected to end with; the suite passes a scenario
/// when the actual status matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    #[default]
    Ok,
    NonConvergence,
    Inconsistent,
    SchemaError,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    #[serde(default)]
    pub expect: Expectation,
    #[serde(flatten)]
    pub kind: ScenarioKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioKind {
    BoxFixedPoint(BoxScenario),
    FiberFixedPoint(FiberScenario),
    MatrixDerivation(MatrixScenario),
    GroupAlgebraDerivation(GroupAlgebraScenario),
    UrnsCertificate(UrnsScenario),
}

impl ScenarioKind {
    pub fn label(&self) -> &'static str {
        match self {
            ScenarioKind::BoxFixedPoint(_) => "box_fixed_point",
            ScenarioKind::FiberFixedPoint(_) => "fiber_fixed_point",
            ScenarioKind::MatrixDerivation(_) => "matrix_derivation",
            ScenarioKind::GroupAlgebraDerivation(_) => "group_algebra_derivation",
            ScenarioKind::UrnsCertificate(_) => "urns_certificate",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            ScenarioKind::BoxFixedPoint(_) | ScenarioKind::UrnsCertificate(_) => 1e-10,
            _ => 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxMethod {
    #[default]
    Iterate,
    OrbitCenter,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedPermutationSpec {
    pub perm: Vec<usize>,
    pub signs: Option<Vec<f64>>,
    pub translation: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomGroups {
    pub instances: usize,
    pub max_order: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxScenario {
    pub n: usize,
    pub generators: Option<Vec<SignedPermutationSpec>>,
    pub x0: Option<Vec<f64>>,
    pub random: Option<RandomGroups>,
    #[serde(default)]
    pub method: BoxMethod,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberIsometrySpec {
    pub perm: Vec<usize>,
    /// One real `k×k` orthogonal matrix per fiber; identity when omitted.
    pub maps: Option<Vec<Vec<Vec<f64>>>>,
    pub translation: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberScenario {
    pub m: usize,
    pub k: usize,
    pub generators: Vec<FiberIsometrySpec>,
    pub x0: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Family(String),
    Generators {
        generators: Vec<ComplexMatrix>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomInner {
    pub instances: usize,
    #[serde(default)]
    pub corrupt: bool,
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    /// `δ` on each generator.
    pub values: Option<Vec<ComplexMatrix>>,
    /// `T₀` for `δ(g) = T₀g − gT₀`.
    pub inner: Option<ComplexMatrix>,
    pub random_inner: Option<RandomInner>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    OrbitCenter,
    Averaging,
    LeastSquares,
}

impl From<MethodName> for WitnessMethod {
    fn from(m: MethodName) -> Self {
        match m {
            MethodName::OrbitCenter => WitnessMethod::OrbitCenter,
            MethodName::Averaging => WitnessMethod::Averaging,
            MethodName::LeastSquares => WitnessMethod::LeastSquares,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixScenario {
    pub d: usize,
    pub group: OneOrMany<GroupSource>,
    pub derivation: DerivationSpec,
    pub methods: Option<Vec<MethodName>>,
    pub similarity: Option<bool>,
    pub norming_seeds: Option<Vec<Vec<Complex>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiniteGroupSource {
    Name(String),
    Permutations { permutations: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupAlgebraMethodName {
    OrbitCenter,
    Averaging,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomCount {
    pub instances: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupAlgebraScenario {
    pub group: FiniteGroupSource,
    pub scalars: Scalars,
    /// `values[g][u] = D(g)(u)`.
    pub values: Option<Vec<Vec<Complex>>>,
    pub inner: Option<Vec<Complex>>,
    pub random_inner: Option<RandomCount>,
    pub methods: Option<Vec<GroupAlgebraMethodName>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceName {
    Box,
    Fiber,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomClouds {
    pub instances: usize,
    pub max_m: usize,
    pub k: usize,
    pub max_points: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UrnsScenario {
    pub space: Option<SpaceName>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    /// Each point is a list of `m` fibers of length `k`.
    pub points: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(rename = "box")]
    pub bounds: Option<BoxSpec>,
    pub random: Option<RandomClouds>,
    pub samples: Option<usize>,
}

/// Parses scenario text, rejecting unknown top-level keys.
pub fn parse_scenario(text: &str) -> Result<Scenario, RunError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| RunError::Schema(format!("invalid JSON: {e}")))?;
    let scenario: Scenario =
        serde_json::from_value(raw.clone()).map_err(|e| RunError::Schema(e.to_string()))?;
    let known: BTreeSet<String> = match serde_json::to_value(&scenario) {
        Ok(Value::Object(map)) => map.keys().cloned().collect(),
        _ => BTreeSet::new(),
    };
    if let Value::Object(map) = &raw {
        if let Some(key) = map.keys().find(|k| !known.contains(*k)) {
            return Err(RunError::Schema(format!("unknown field `{key}`")));
        }
    }
    Ok(scenario)
}

pub fn schema(msg: impl Into<String>) -> RunError {
    RunError::Schema(msg.into())
}

pub fn complex(z: &Complex) -> C64 {
    C64::new(z[0], z[1])
}

pub fn to_complex(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn complex_matrix(rows: &ComplexMatrix, what: &str) -> Result<CMatrix, RunError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(schema(format!("{what}: matrix rows must be nonempty and of equal length")));
    }
    let flat: Vec<C64> = rows.iter().flatten().map(complex).collect();
    if flat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(schema(format!("{what}: non-finite entry")));
    }
    Ok(CMatrix::from_row_slice(r, c, &flat))
}

pub fn square_matrix(rows: &ComplexMatrix, d: usize, what: &str) -> Result<CMatrix, RunError> {
    let m = complex_matrix(rows, what)?;
    if m.shape() != (d, d) {
        return Err(schema(format!("{what}: expected {d}x{d}, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(m)
}

pub fn matrix_rows(m: &CMatrix) -> ComplexMatrix {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| to_complex(m[(r, c)])).collect())
        .collect()
}

pub fn real_matrix(rows: &[Vec<f64>], k: usize, what: &str) -> Result<DMatrix<f64>, RunError> {
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(schema(format!("{what}: expected a {k}x{k} matrix")));
    }
    Ok(DMatrix::from_row_slice(k, k, &rows.concat()))
}

pub fn fiber_point(fibers: &[Vec<f64>], m: usize, k: usize, what: &str) -> Result<SupPoint, RunError> {
    if fibers.len() != m || fibers.iter().any(|f| f.len() != k) {
        return Err(schema(format!("{what}: expected {m} fibers of length {k}")));
    }
    SupPoint::new(m, k, fibers.concat()).map_err(|e| schema(format!("{what}: {e}")))
}

pub fn signed_permutation(spec: &SignedPermutationSpec, n: usize, i: usize) -> Result<FiberPermIsometry, RunError> {
    let signs = spec.signs.clone().unwrap_or_else(|| vec![1.0; n]);
    let translation = spec.translation.clone().unwrap_or_else(|| vec![0.0; n]);
    if spec.perm.len() != n || signs.len() != n || translation.len() != n {
        return Err(schema(format!("generator {i}: perm, signs and translation need length {n}")));
    }
    if signs.iter().any(|s| s.abs() != 1.0) {
        return Err(schema(format!("generator {i}: signs must be ±1")));
    }
    FiberPermIsometry::signed_permutation(spec.perm.clone(), &signs, translation)
        .map_err(|e| schema(format!("generator {i}: {e}")))
}

pub fn fiber_isometry(spec: &FiberIsometrySpec, m: usize, k: usize, i: usize) -> Result<FiberPermIsometry, RunError> {
    let what = format!("generator {i}");
    let maps = match &spec.maps {
        None => vec![DMatrix::identity(k, k); m],
        Some(maps) if maps.len() == m => maps
            .iter()
            .map(|rows| real_matrix(rows, k, &what))
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(schema(format!("{what}: expected {m} fiber maps"))),
    };
    let translation = match &spec.translation {
        None => SupPoint::zeros(m, k),
        Some(t) => fiber_point(t, m, k, &what)?,
    };
    FiberPermIsometry::new(spec.perm.clone(), maps, translation).map_err(|e| schema(format!("{what}: {e}")))
}

/// A unitary group given by a named family or explicit generators.
#[derive(Debug, Clone)]
pub struct ResolvedGroup {
    pub label: String,
    pub generators: Vec<MatrixElement>,
}

pub fn resolve_group(source: &GroupSource, d: usize) -> Result<ResolvedGroup, RunError> {
    match source {
        GroupSource::Family(name) => {
            let family = parse_family(name)?;
            if family.dim() != d {
                return Err(schema(format!("{name} acts on C^{}, scenario has d = {d}", family.dim())));
            }
            Ok(ResolvedGroup {
                label: family.name(),
                generators: family.generators(),
            })
        }
        GroupSource::Generators { generators } => {
            if generators.is_empty() {
                return Err(schema("a group needs at least one generator"));
            }
            let generators = generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let what = format!("generator {i}");
                    MatrixElement::unitary(square_matrix(g, d, &what)?).map_err(|e| schema(format!("{what}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ResolvedGroup {
                label: "custom".into(),
                generators,
            })
        }
    }
}

pub fn parse_family(name: &str) -> Result<MatrixFamily, RunError> {
    match name {
        "Q8" => Ok(MatrixFamily::Quaternion),
        "S3" => Ok(MatrixFamily::Symmetric3),
        _ => name
            .strip_prefix('C')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(MatrixFamily::Cyclic)
            .ok_or_else(|| schema(format!("unknown group family `{name}` (expected Q8, S3 or C<n>)"))),
    }
}

pub fn resolve_finite_group(source: &FiniteGroupSource) -> Result<FiniteGroup, RunError> {
    match source {
        FiniteGroupSource::Name(name) if name == "S3" => Ok(FiniteGroup::symmetric3()),
        FiniteGroupSource::Name(name) => name
            .strip_prefix('Z')
            .or_else(|| name.strip_prefix('C'))
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| (1..=64).contains(&n))
            .map(FiniteGroup::cyclic)
            .ok_or_else(|| schema(format!("unknown finite group `{name}` (expected S3 or Z<n>)"))),
        FiniteGroupSource::Permutations { permutations } => {
            let gens = permutations
                .iter()
                .map(|p| Permutation::new(p.clone()).map_err(|e| schema(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_permutations(gens, 720).map_err(|e| schema(e.to_string()))
        }
    }
}

pub fn scalars_value(z: &Complex, scalars: Scalars, what: &str) -> Result<C64, RunError> {
    if scalars == Scalars::Real && z[1] != 0.0 {
        return Err(schema(format!("{what}: real scalars need zero imaginary parts")));
    }
    Ok(complex(z))
}

pub fn norming_seeds(seeds: &[Vec<Complex>], d: usize) -> Result<Vec<CVector>, RunError> {
    seeds
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != d {
                return Err(schema(format!("norming seed {i}: expected length {d}")));
            }
            let v = CVector::from_iterator(d, v.iter().map(complex));
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(schema(format!("norming seed {i} is not a unit vector")));
            }
            Ok(v)
        })
        .collect()
}
