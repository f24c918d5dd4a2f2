//! JSON model of every command's output. Text and CSV renderings are built
//! from these types only.

use num_complex::Complex64;
use ranklab_core::bounds::BoundsReport;
use ranklab_core::census::CensusRecord;
use ranklab_core::flag::{CaseFuzz, FuzzReport};
use ranklab_core::secant::{SecantRecord, Source, Status};
use ranklab_core::witness::{Exactness, HypersurfaceModel, WitnessDecomposition};
use ranklab_core::{ParamPoint, Scalar, VarietyFamily};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA: &str = "ranklab/1";

/// Family tag and integer parameters: `[n, d]` for Veronese, affine
/// `[k, n]` for Grassmann, the factor dimensions for Segre, nothing for
/// the flag variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRef {
    pub family: String,
    pub params: Vec<usize>,
}

impl FamilyRef {
    pub fn to_family(&self) -> Result<VarietyFamily> {
        let bad = |msg: &str| CliError::Config(format!("{msg} for family {:?}", self.family));
        let two = || match self.params[..] {
            [a, b] => Ok((a, b)),
            _ => Err(bad("expected two parameters")),
        };
        let v = match self.family.as_str() {
            "veronese" => {
                let (n, d) = two()?;
                VarietyFamily::veronese(n, d)?
            }
            "grassmann" => {
                let (k, n) = two()?;
                VarietyFamily::grassmann(k, n)?
            }
            "segre" => VarietyFamily::segre(self.params.clone())?,
            "flag_adjoint3" => {
                if !self.params.is_empty() {
                    return Err(bad("expected no parameters"));
                }
                VarietyFamily::flag_adjoint3()
            }
            other => return Err(CliError::Config(format!("unknown family {other:?}"))),
        };
        Ok(v)
    }
}

impl From<&VarietyFamily> for FamilyRef {
    fn from(v: &VarietyFamily) -> Self {
        let (family, params) = match v {
            VarietyFamily::Veronese { n, d } => ("veronese", vec![*n, *d]),
            VarietyFamily::Grassmann { k, n } => ("grassmann", vec![*k, *n]),
            VarietyFamily::Segre { dims } => ("segre", dims.clone()),
            VarietyFamily::FlagAdjoint3 => ("flag_adjoint3", vec![]),
        };
        FamilyRef {
            family: family.to_string(),
            params,
        }
    }
}

pub fn source_name(s: Source) -> &'static str {
    match s {
        Source::Terracini => "terracini",
        Source::ExceptionTable => "exception_table",
        Source::Arithmetic => "arithmetic",
    }
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Theorem => "theorem",
        Status::Conjecture => "conjecture",
        Status::Sampled => "sampled",
    }
}

/// Exact rational as `"p"` or `"p/q"`.
pub fn scalar_string(x: &Scalar) -> String {
    x.to_string()
}

pub fn scalar_strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(scalar_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantRecordJson {
    pub family: String,
    pub params: Vec<usize>,
    pub s: usize,
    pub ambient_dim: usize,
    pub expected_dim: usize,
    pub actual_dim: usize,
    pub defect: usize,
    pub hypersurface: bool,
    pub source: &'static str,
    pub status: &'static str,
    pub verified_dim: Option<usize>,
}

impl SecantRecordJson {
    /// `params` overrides the family's own parameters (dual Grassmann
    /// presentations).
    pub fn new(r: &SecantRecord, params: Option<Vec<usize>>, verified_dim: Option<usize>) -> Self {
        let f = FamilyRef::from(&r.family);
        SecantRecordJson {
            family: f.family,
            params: params.unwrap_or(f.params),
            s: r.s,
            ambient_dim: r.ambient_dim,
            expected_dim: r.expected_dim,
            actual_dim: r.actual_dim,
            defect: r.defect,
            hypersurface: r.hypersurface,
            source: source_name(r.source),
            status: status_name(r.status),
            verified_dim,
        }
    }

    pub fn from_census(c: &CensusRecord) -> Self {
        let (a, b) = c.presentation;
        Self::new(&c.record, Some(vec![a, b]), c.verified_dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub record: SecantRecordJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub family: String,
    pub limit: usize,
    pub verify: &'static str,
    pub seed: u64,
    pub count: usize,
    pub records: Vec<SecantRecordJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValues {
    pub codim: usize,
    pub bt_general: usize,
    pub bt_hypersurface: Option<usize>,
    pub bhmt: Option<usize>,
    pub jelisiejew: Option<u128>,
    pub bdp: Option<u128>,
    pub deparis2: Option<usize>,
    pub main: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsJson {
    pub family: String,
    pub params: Vec<usize>,
    pub name: String,
    pub ambient_dim: usize,
    pub dim_x: usize,
    pub g: usize,
    pub sigma_prev_hypersurface: bool,
    pub bounds: BoundValues,
    pub r_max_prev: Option<usize>,
    pub r_max_prev_upper_bound_only: Option<bool>,
    pub known_r_max: Option<usize>,
    pub notes: Vec<String>,
}

impl From<&BoundsReport> for BoundsJson {
    fn from(r: &BoundsReport) -> Self {
        let f = FamilyRef::from(&r.family);
        BoundsJson {
            family: f.family,
            params: f.params,
            name: ranklab_core::varieties::projective_name(&r.family),
            ambient_dim: r.ambient_dim,
            dim_x: r.dim_x,
            g: r.g,
            sigma_prev_hypersurface: r.sigma_prev_hypersurface,
            bounds: BoundValues {
                codim: r.codim_bound,
                bt_general: r.bt_general,
                bt_hypersurface: r.bt_hypersurface,
                bhmt: r.bhmt,
                jelisiejew: r.jelisiejew,
                bdp: r.bdp,
                deparis2: r.deparis2,
                main: r.main_bound,
            },
            r_max_prev: r.r_prev.map(|(v, _)| v),
            r_max_prev_upper_bound_only: r.r_prev.map(|(_, u)| u),
            known_r_max: r.known_r_max,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub report: BoundsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzFailureJson {
    /// `[a, b, c, d]`.
    pub params: Vec<String>,
    pub k: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseFuzzJson {
    pub case: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<FuzzFailureJson>,
}

impl From<&CaseFuzz> for CaseFuzzJson {
    fn from(c: &CaseFuzz) -> Self {
        CaseFuzzJson {
            case: c.case.to_string(),
            passed: c.passed,
            failed: c.failed,
            failures: c
                .failures
                .iter()
                .map(|f| FuzzFailureJson {
                    params: scalar_strings(&f.params),
                    k: f.k.as_ref().map(scalar_string),
                    reason: f.reason.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyDecompOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub samples_per_case: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub cases: Vec<CaseFuzzJson>,
}

impl From<&FuzzReport> for VerifyDecompOutput {
    fn from(r: &FuzzReport) -> Self {
        let (passed, failed) = r.total();
        VerifyDecompOutput {
            schema: SCHEMA,
            command: "verify-decomp",
            seed: r.seed,
            samples_per_case: r.samples_per_case,
            passed,
            failed,
            all_passed: r.all_passed(),
            cases: r.cases.iter().map(CaseFuzzJson::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactnessJson {
    Exact,
    NumericWithResidual {
        tolerance: f64,
        residual: f64,
        /// `R` as `[re, im]` pairs, in the same layout as `r`.
        r_numeric: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamPointJson {
    pub vectors: Vec<Vec<String>>,
}

impl From<&ParamPoint> for ParamPointJson {
    fn from(p: &ParamPoint) -> Self {
        let vectors = match p {
            ParamPoint::Veronese(l) => vec![scalar_strings(l)],
            ParamPoint::Grassmann(ws) | ParamPoint::Segre(ws) => ws.iter().map(|w| scalar_strings(w)).collect(),
            ParamPoint::Flag { v1, v2 } => vec![scalar_strings(v1), scalar_strings(v2)],
        };
        ParamPointJson { vectors }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub variety: &'static str,
    pub seed: u64,
    pub max_tries: usize,
    /// Layout of `p`, `q` and `r`.
    pub layout: &'static str,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub q_param: ParamPointJson,
    pub r: Vec<String>,
    pub alpha: String,
    pub beta: String,
    pub rank_bound: usize,
    pub exactness: ExactnessJson,
    pub tries: usize,
    pub degenerate: usize,
    pub verified: bool,
}

pub fn variety_name(m: HypersurfaceModel) -> &'static str {
    match m {
        HypersurfaceModel::Flag => "flag",
        HypersurfaceModel::Klein => "klein",
        HypersurfaceModel::Sym2 => "sym2",
    }
}

/// Points in user-facing layout: row-major `3 × 3` matrices for the
/// determinantal models, Plücker coordinates `p12 p13 p14 p23 p24 p34` for
/// the Klein quadric.
pub fn layout(m: HypersurfaceModel) -> &'static str {
    match m {
        HypersurfaceModel::Flag => "traceless 3x3 matrix, row-major",
        HypersurfaceModel::Sym2 => "symmetric 3x3 matrix, row-major",
        HypersurfaceModel::Klein => "pluecker p12 p13 p14 p23 p24 p34",
    }
}

pub fn to_layout(m: HypersurfaceModel, x: &[Scalar]) -> Result<Vec<Scalar>> {
    Ok(match m {
        HypersurfaceModel::Flag => ranklab_core::varieties::flag_unchart(x)?,
        HypersurfaceModel::Sym2 => ranklab_core::varieties::sym2_matrix(x)?,
        HypersurfaceModel::Klein => x.to_vec(),
    })
}

fn complex_layout(m: HypersurfaceModel, x: &[Complex64]) -> Vec<Complex64> {
    match m {
        HypersurfaceModel::Flag => {
            let mut v = x.to_vec();
            v.push(-(x[0] + x[4]));
            v
        }
        HypersurfaceModel::Sym2 => {
            let h = |z: Complex64| z / 2.0;
            vec![x[0], h(x[1]), h(x[2]), h(x[1]), x[3], h(x[4]), h(x[2]), h(x[4]), x[5]]
        }
        HypersurfaceModel::Klein => x.to_vec(),
    }
}

impl WitnessOutput {
    pub fn new(w: &WitnessDecomposition, seed: u64, max_tries: usize) -> Result<Self> {
        let m = w.model;
        let exactness = match &w.exactness {
            Exactness::Exact => ExactnessJson::Exact,
            Exactness::NumericWithResidual {
                tolerance,
                residual,
                r_numeric,
            } => ExactnessJson::NumericWithResidual {
                tolerance: *tolerance,
                residual: *residual,
                r_numeric: complex_layout(m, r_numeric).iter().map(|z| [z.re, z.im]).collect(),
            },
        };
        Ok(WitnessOutput {
            schema: SCHEMA,
            command: "witness",
            variety: variety_name(m),
            seed,
            max_tries,
            layout: layout(m),
            p: scalar_strings(&to_layout(m, &w.p)?),
            q: scalar_strings(&to_layout(m, &w.q)?),
            q_param: ParamPointJson::from(&w.q_param),
            r: scalar_strings(&to_layout(m, &w.r)?),
            alpha: scalar_string(&w.alpha),
            beta: scalar_string(&w.beta),
            rank_bound: w.rank_bound,
            exactness,
            tries: w.tries,
            degenerate: w.degenerate,
            verified: w.verify()?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson<'a> {
    pub schema: &'static str,
    pub error: ErrorBody<'a>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub variant: &'a str,
    pub message: String,
    pub exit_code: i32,
}
