//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ranklab_core::census::{CensusQuery, VerifyMode};
use ranklab_core::witness::HypersurfaceModel;
use ranklab_core::VarietyFamily;

use crate::commands::{self, CensusFamily, DEFAULT_MAX_TRIES, DEFAULT_SAMPLES};
use crate::data::{self, EXCEPTIONS_FILE, KNOWN_FACTS_FILE};
use crate::error::{CliError, Result};
use crate::model::{ErrorBody, ErrorJson, SCHEMA};
use crate::points;
use crate::render;
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "ranklab",
    version,
    about = "Secant dimensions, maximum-rank bounds and rank witnesses"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory holding exceptions.json and known_facts.json (overrides
    /// RANKLAB_DATA_DIR).
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Secant dimension of one family.
    Dim(DimArgs),
    /// Maximum-rank bounds for one family.
    Bounds(BoundsArgs),
    /// Families whose subgeneric secant variety is a hypersurface.
    Census(CensusArgs),
    /// Fuzz the flag-variety tangent decompositions.
    VerifyDecomp(VerifyDecompArgs),
    /// Decompose a point through a line meeting a hypersurface.
    Witness(WitnessArgs),
    /// All comparison tables in one document.
    ReportAll(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarietyKind {
    Veronese,
    Grassmann,
    Segre,
    Flag,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub variety: VarietyKind,
    /// Veronese: projective dimension; Grassmann: vector space dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Veronese degree.
    #[arg(long)]
    pub d: Option<usize>,
    /// Grassmann subspace dimension.
    #[arg(long)]
    pub k: Option<usize>,
    /// Segre factor dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,
}

impl FamilyArgs {
    pub fn family(&self) -> Result<VarietyFamily> {
        let need = |x: Option<usize>, flag: &str| {
            x.ok_or_else(|| CliError::Config(format!("--{flag} is required for {:?}", self.variety)))
        };
        Ok(match self.variety {
            VarietyKind::Veronese => VarietyFamily::veronese(need(self.n, "n")?, need(self.d, "d")?)?,
            VarietyKind::Grassmann => VarietyFamily::grassmann(need(self.k, "k")?, need(self.n, "n")?)?,
            VarietyKind::Segre => {
                if self.dims.is_empty() {
                    return Err(CliError::Config("--dims is required for segre".into()));
                }
                VarietyFamily::segre(self.dims.clone())?
            }
            VarietyKind::Flag => VarietyFamily::flag_adjoint3(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Markdown,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    None,
    Exact,
    Modular,
}

impl From<Verify> for VerifyMode {
    fn from(v: Verify) -> Self {
        match v {
            Verify::None => VerifyMode::None,
            Verify::Exact => VerifyMode::TerraciniExact,
            Verify::Modular => VerifyMode::TerraciniModular,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub s: usize,
    /// Also compute the Terracini dimension.
    #[arg(long, value_enum, default_value_t = Verify::None)]
    pub verify: Verify,
    /// Exception table file (overrides the data directory)
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Exception table file (overrides the data directory)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Known-rank facts file (overrides the data directory)
    #[arg(long)]
    pub facts: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusKind {
    Grassmann,
    Veronese,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[arg(long, value_enum)]
    pub family: CensusKind,
    /// Grassmann: bound on `n` and `s`. Veronese: bound on `n`.
    #[arg(long)]
    pub limit: usize,
    /// Veronese only: bound on the degree (defaults to the limit).
    #[arg(long)]
    pub d_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Verify::None)]
    pub verify: Verify,
    /// Records with a larger ambient dimension are not verified.
    #[arg(long, default_value_t = 200)]
    pub verify_cap: usize,
    /// Exception table file (overrides the data directory)
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyDecompArgs {
    /// `0`..`17`, `a-only`, `b-only` or `c-only`; all numbered cases when
    /// omitted.
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessVariety {
    Flag,
    Klein,
    Sym2,
}

impl From<WitnessVariety> for HypersurfaceModel {
    fn from(v: WitnessVariety) -> Self {
        match v {
            WitnessVariety::Flag => HypersurfaceModel::Flag,
            WitnessVariety::Klein => HypersurfaceModel::Klein,
            WitnessVariety::Sym2 => HypersurfaceModel::Sym2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub variety: WitnessVariety,
    /// Plain-text point file.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub point: Option<PathBuf>,
    /// Draw a random point off the hypersurface.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_TRIES)]
    pub max_tries: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 500)]
    pub census_limit: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Markdown)]
    pub format: ReportFormat,
}

/// Rendered output and the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn data_path(explicit: &Option<PathBuf>, dir: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| dir.as_ref().map(|d| d.join(name)))
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Config(format!("{command} does not support --format {format:?}").to_lowercase())
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let ok = |output: String| Outcome { output, exit_code: 0 };
    let exceptions = |t: &Option<PathBuf>| {
        data::load_exceptions(data_path(t, &cli.data_dir, EXCEPTIONS_FILE).as_deref()).map(|(t, _)| t)
    };
    let facts = |f: &Option<PathBuf>| {
        data::load_known_facts(data_path(f, &cli.data_dir, KNOWN_FACTS_FILE).as_deref()).map(|(k, _)| k)
    };
    match &cli.command {
        Command::Dim(a) => {
            let v = a.family.family()?;
            let o = commands::dim(&v, a.s, &exceptions(&a.table)?, a.verify.into(), cli.seed)?;
            Ok(ok(match a.format {
                Format::Json => render::json(&o)?,
                Format::Csv => render::dim_csv(&o)?,
                Format::Text => render::dim_text(&o),
            }))
        }
        Command::Bounds(a) => {
            let v = a.family.family()?;
            let o = commands::bounds(&v, &facts(&a.facts)?, &exceptions(&a.table)?)?;
            Ok(ok(match a.format {
                Format::Json => render::json(&o)?,
                Format::Csv => render::bounds_csv(&o)?,
                Format::Text => render::bounds_text(&o),
            }))
        }
        Command::Census(a) => {
            let family = match a.family {
                CensusKind::Grassmann => CensusFamily::Grassmann,
                CensusKind::Veronese => CensusFamily::Veronese,
            };
            if a.d_max.is_some() && family == CensusFamily::Grassmann {
                return Err(CliError::Config("--d-max applies to the veronese census only".into()));
            }
            let q = CensusQuery {
                verify: a.verify.into(),
                verify_cap: a.verify_cap,
                seed: cli.seed,
            };
            let o = commands::census(family, a.limit, a.d_max, &exceptions(&a.table)?, &q)?;
            Ok(ok(match a.format {
                Format::Json => render::json(&o)?,
                Format::Csv => render::census_csv(&o)?,
                Format::Text => render::census_text(&o),
            }))
        }
        Command::VerifyDecomp(a) => {
            let case = a.case.as_deref().map(commands::parse_case).transpose()?;
            let o = commands::verify_decomp(case, a.samples, cli.seed)?;
            let output = match a.format {
                Format::Json => render::json(&o)?,
                Format::Text => render::verify_decomp_text(&o),
                Format::Csv => return Err(unsupported(a.format, "verify-decomp")),
            };
            Ok(Outcome {
                output,
                exit_code: if o.all_passed { 0 } else { 1 },
            })
        }
        Command::Witness(a) => {
            let model: HypersurfaceModel = a.variety.into();
            let p = match &a.point {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                        path: path.clone(),
                        source,
                    })?;
                    points::model_point(model, &points::parse_scalars(&text)?)?
                }
                None => commands::random_witness_point(model, cli.seed),
            };
            let o = commands::witness(model, &p, cli.seed, a.max_tries)?;
            Ok(ok(match a.format {
                Format::Json => render::json(&o)?,
                Format::Text => render::witness_text(&o),
                Format::Csv => return Err(unsupported(a.format, "witness")),
            }))
        }
        Command::ReportAll(a) => {
            let r = report::build(&facts(&None)?, &exceptions(&None)?, a.census_limit, a.samples, cli.seed)?;
            Ok(ok(match a.format {
                ReportFormat::Json => render::json(&r)?,
                ReportFormat::Markdown => report::markdown(&r),
            }))
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Structured error line for stderr.
pub fn error_json(e: &CliError) -> String {
    let body = ErrorJson {
        schema: SCHEMA,
        error: ErrorBody {
            kind: e.kind(),
            variant: e.variant(),
            message: e.to_string(),
            exit_code: e.exit_code(),
        },
    };
    serde_json::to_string(&body).unwrap_or_else(|_| format!("{{\"error\":{:?}}}", e.to_string()))
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|o| write_output(cli.out.as_deref(), &o.output).map(|_| o.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("ranklab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn missing_family_parameter_is_config_error() {
        let cli = parse(&["dim", "--variety", "veronese", "--n", "2", "--s", "1"]);
        let e = execute(&cli).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn module_error_exit_code() {
        let cli = parse(&["dim", "--variety", "segre", "--dims", "9,9,9,9", "--s", "40"]);
        let e = execute(&cli).unwrap_err();
        assert_eq!((e.exit_code(), e.variant()), (1, "UnknownCase"));
    }

    #[test]
    fn witness_requires_a_point_source() {
        let r = Cli::try_parse_from(["ranklab", "witness", "--variety", "flag"]);
        assert!(r.is_err());
        let r = Cli::try_parse_from(["ranklab", "witness", "--variety", "flag", "--random", "--point", "x"]);
        assert!(r.is_err());
    }

    #[test]
    fn grassmann_flags_are_affine() {
        let cli = parse(&["dim", "--variety", "grassmann", "--k", "3", "--n", "7", "--s", "3"]);
        let o = execute(&cli).unwrap();
        assert!(o.output.contains("actual dim 33"), "{}", o.output);
    }
}
