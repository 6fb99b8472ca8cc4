//! Command-line front end. The binary is a thin wrapper around [`main_with_args`].
//!
//! Every job produces one JSON document on stdout. Failures produce
//! `{"error": {"kind", "message"}}` and a nonzero exit: 2 for unparsable
//! input, 3 for violated preconditions, 4 when no generic displacement or
//! sample point was found.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chambers::{density_sum, ModelSystem, ShiftedLattice};
use crate::error::{Error, Result};
use crate::exact::field::{FieldDescriptor, Scalar, ScalarDoc};
use crate::exact::matrix::{LinearMap, Matrix, Vector};
use crate::expsum::{
    intersection_index, parse_constant, system_trop, weak_density, ExpSum, Route, ScaledDensity,
};
use crate::fan::{pullback, FanDoc, TropicalFan};
use crate::polyring::{default_probes, ClassDoc, PolytopeClass, ZeroVerdict};
use crate::polytope::{mixed_volume, Polytope, PolytopeDoc};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    /// Tropicalize a system of exponential sums.
    Trop,
    /// Intersection index of n hypersurfaces in C^n.
    Index,
    /// Weak density of a codimension-n system.
    Density,
    /// Zero lattices of one sampled chamber.
    Lattices,
    /// Several chambers and their densities.
    Chambers,
    /// Compare two fan documents.
    Equal,
    /// Pull a fan back along a linear map.
    Pullback,
    /// Mixed volume of n polytopes in R^n.
    Mixedvol,
    /// Pair polytope classes, or test a class for zero against probes.
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteChoice {
    Direct,
    Model,
    Both,
}

#[derive(Parser, Debug)]
#[command(
    name = "quasitrop",
    version,
    about = "Exact tropical geometry of exponential sums"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: CommandName,
    /// Expressions, or paths to / inline JSON documents. Put `--` before
    /// an expression that starts with a minus sign.
    pub inputs: Vec<String>,
    /// Q or Qsqrt:d
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Compact output (the default).
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
    /// JSON list of probe classes for `pair`.
    #[arg(long)]
    pub probes: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "direct")]
    pub route: RouteChoice,
    /// Add a labeled decimal approximation to densities.
    #[arg(long)]
    pub approx: bool,
    /// Significant digits of decimal approximations.
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    /// Number of chambers sampled by `chambers`.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: CommandName,
    pub field: FieldDescriptor,
    pub dim: Option<usize>,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub pretty: bool,
    pub probes: Option<PathBuf>,
    pub route: RouteChoice,
    pub approx: bool,
    pub precision: usize,
    pub samples: usize,
}

impl JobSpec {
    pub fn new(
        command: CommandName,
        field: FieldDescriptor,
        dim: Option<usize>,
        inputs: &[&str],
    ) -> JobSpec {
        JobSpec {
            command,
            field,
            dim,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            seed: DEFAULT_SEED,
            pretty: false,
            probes: None,
            route: RouteChoice::Direct,
            approx: false,
            precision: 12,
            samples: 3,
        }
    }

    pub fn from_args(args: Args) -> Result<JobSpec> {
        Ok(JobSpec {
            command: args.command,
            field: FieldDescriptor::parse(&args.field)?,
            dim: args.dim,
            inputs: args.inputs,
            seed: args.seed,
            pretty: args.pretty,
            probes: args.probes,
            route: args.route,
            approx: args.approx,
            precision: args.precision,
            samples: args.samples,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
}

impl Outcome {
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(&self.document).expect("json values serialize")
        } else {
            self.document.to_string()
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::Unrepresentable { .. }
        | Error::InvalidField(_)
        | Error::Document(_)
        | Error::Io(_) => 2,
        Error::GenericityExhausted(_) => 4,
        _ => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::FieldMismatch(..) => "field_mismatch",
        Error::InvalidField(_) => "invalid_field",
        Error::Syntax { .. } => "syntax",
        Error::Unrepresentable { .. } => "unrepresentable",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::Inconsistent => "inconsistent",
        Error::NonSpanning(_) => "non_spanning",
        Error::Unbalanced(_) => "unbalanced",
        Error::DegenerateMap => "degenerate_map",
        Error::FaceNotInLattice => "face_not_in_lattice",
        Error::GenericityExhausted(_) => "genericity_exhausted",
        Error::Precondition(_) => "precondition",
        Error::Io(_) => "io",
        Error::Document(_) => "document",
    }
}

pub fn error_document(e: &Error) -> Value {
    let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Syntax { pos, .. } = e {
        err["position"] = json!(pos);
    }
    if let Error::NonSpanning(dirs) = e {
        err["deficient_directions"] = json!(dirs);
    }
    json!({ "error": err })
}

/// Runs one job. Never panics on bad input; errors become documents.
pub fn run(job: &JobSpec) -> Outcome {
    match dispatch(job) {
        Ok(document) => Outcome {
            exit_code: 0,
            document,
        },
        Err(e) => Outcome {
            exit_code: exit_code(&e),
            document: error_document(&e),
        },
    }
}

/// Parses `argv`, runs the job and prints the result. Returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            println!(
                "{}",
                json!({ "error": { "kind": "usage", "message": e.to_string() } })
            );
            return 2;
        }
    };
    let pretty = args.pretty;
    let outcome = match JobSpec::from_args(args) {
        Ok(job) => run(&job),
        Err(e) => Outcome {
            exit_code: exit_code(&e),
            document: error_document(&e),
        },
    };
    println!("{}", outcome.render(pretty));
    outcome.exit_code
}

fn dispatch(job: &JobSpec) -> Result<Value> {
    match job.command {
        CommandName::Trop => trop(job),
        CommandName::Index => {
            let fs = expressions(job)?;
            Ok(density_doc(&intersection_index(&fs, job.seed)?, job))
        }
        CommandName::Density => {
            let fs = expressions(job)?;
            Ok(density_doc(&weak_density(&fs, job.seed)?, job))
        }
        CommandName::Lattices => lattices(job),
        CommandName::Chambers => chambers(job),
        CommandName::Equal => {
            let [a, b] = exactly::<2>(job)?;
            let fa = load_fan(a, job)?;
            let fb = load_fan(b, job)?;
            check_dim(job, fa.ambient())?;
            Ok(json!({ "equal": fa.equals(&fb) }))
        }
        CommandName::Pullback => {
            let [m, f] = exactly::<2>(job)?;
            let map = load_map(m, job)?;
            let fan = load_fan(f, job)?;
            let pulled = pullback(&map, &fan, job.seed)?;
            Ok(json!({ "fan": fan_doc(&pulled, job.field) }))
        }
        CommandName::Mixedvol => {
            let ps = job
                .inputs
                .iter()
                .map(|i| Polytope::from_doc(&load_doc::<PolytopeDoc>(i)?, job.field))
                .collect::<Result<Vec<_>>>()?;
            if let Some(p) = ps.first() {
                check_dim(job, p.ambient())?;
            }
            Ok(json!({ "value": mixed_volume(&ps)?.to_string() }))
        }
        CommandName::Pair => pair(job),
    }
}

fn exactly<const K: usize>(job: &JobSpec) -> Result<[&str; K]> {
    let v: Vec<&str> = job.inputs.iter().map(String::as_str).collect();
    v.try_into().map_err(|v: Vec<&str>| {
        Error::Precondition(format!(
            "{:?} takes {K} inputs, got {}",
            job.command,
            v.len()
        ))
    })
}

fn check_dim(job: &JobSpec, found: usize) -> Result<()> {
    match job.dim {
        Some(n) if n != found => Err(Error::DimensionMismatch { expected: n, found }),
        _ => Ok(()),
    }
}

fn expressions(job: &JobSpec) -> Result<Vec<ExpSum>> {
    let n = job
        .dim
        .ok_or_else(|| Error::Document("--dim is required for expression input".into()))?;
    if job.inputs.is_empty() {
        return Err(Error::Precondition("no expressions given".into()));
    }
    job.inputs
        .iter()
        .map(|t| ExpSum::parse(t, job.field, n))
        .collect()
}

/// A file path, or the document itself when it starts like JSON.
fn load_text(input: &str) -> Result<String> {
    let t = input.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(input.to_string());
    }
    std::fs::read_to_string(Path::new(input)).map_err(|e| Error::Io(format!("{input}: {e}")))
}

fn load_doc<T: for<'de> Deserialize<'de>>(input: &str) -> Result<T> {
    Ok(serde_json::from_str(&load_text(input)?)?)
}

fn load_fan(input: &str, job: &JobSpec) -> Result<TropicalFan> {
    let doc: FanDoc = load_doc(input)?;
    TropicalFan::from_doc(&doc, doc.field.unwrap_or(job.field))
}

/// `{"source_dim": n, "matrix": [[scalar..]..], "kernel": [[scalar..]..]}`,
/// matrix rows indexing the target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    pub source_dim: usize,
    pub matrix: Vec<Vec<ScalarDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<Vec<ScalarDoc>>>,
}

impl MapDoc {
    pub fn from_map(map: &LinearMap) -> MapDoc {
        let rows = |vs: &[Vector]| {
            vs.iter()
                .map(|r| r.iter().map(ScalarDoc::from_scalar).collect())
                .collect()
        };
        MapDoc {
            field: None,
            source_dim: map.source_dim(),
            matrix: rows(map.matrix().row_vectors()),
            kernel: map.kernel_orientation().map(rows),
        }
    }

    pub fn to_map(&self, field: FieldDescriptor) -> Result<LinearMap> {
        let n = self.source_dim;
        let rows = |vs: &[Vec<ScalarDoc>]| -> Result<Vec<Vector>> {
            vs.iter()
                .map(|r| {
                    if r.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: r.len(),
                        });
                    }
                    r.iter().map(|x| x.to_scalar(field)).collect()
                })
                .collect()
        };
        let map = LinearMap::new(Matrix::from_rows(n, rows(&self.matrix)?));
        match &self.kernel {
            None => Ok(map),
            Some(k) => map.with_kernel_orientation(rows(k)?),
        }
    }
}

fn load_map(input: &str, job: &JobSpec) -> Result<LinearMap> {
    let doc: MapDoc = load_doc(input)?;
    doc.to_map(doc.field.unwrap_or(job.field))
}

fn fan_doc(fan: &TropicalFan, field: FieldDescriptor) -> FanDoc {
    let mut doc = fan.to_doc();
    doc.field = Some(field);
    doc
}

/// `{"value": "<exact>", "two_pi_power": -n}` on the wire.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityDoc {
    pub value: String,
    pub two_pi_power: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approximate_decimal: Option<String>,
}

impl DensityDoc {
    pub fn from_density(d: &ScaledDensity) -> DensityDoc {
        DensityDoc {
            value: d.value.to_string(),
            two_pi_power: d.two_pi_power,
            approximate_decimal: None,
        }
    }

    pub fn to_density(&self, field: FieldDescriptor) -> Result<ScaledDensity> {
        Ok(ScaledDensity {
            value: parse_constant(&self.value, field)?,
            two_pi_power: self.two_pi_power,
        })
    }
}

/// `x` to `digits` significant digits, display only.
pub fn decimal(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn density_doc(d: &ScaledDensity, job: &JobSpec) -> Value {
    let mut doc = DensityDoc::from_density(d);
    if job.approx {
        doc.approximate_decimal = Some(decimal(d.approx(), job.precision));
    }
    serde_json::to_value(doc).expect("density serializes")
}

fn trop(job: &JobSpec) -> Result<Value> {
    let fs = expressions(job)?;
    let routes: &[Route] = match job.route {
        RouteChoice::Direct => &[Route::Direct],
        RouteChoice::Model => &[Route::Model],
        RouteChoice::Both => &[Route::Direct, Route::Model],
    };
    let fans = routes
        .iter()
        .map(|r| system_trop(&fs, *r, job.seed))
        .collect::<Result<Vec<_>>>()?;
    let fan = &fans[0];
    let mut doc = json!({
        "fan": fan_doc(fan, job.field),
        "balanced": fan.balance_check().balanced,
    });
    if fans.len() == 2 {
        doc["routes_agree"] = json!(fans[0].equals(&fans[1]));
    }
    Ok(doc)
}

fn lattice_docs(ls: &[ShiftedLattice]) -> Value {
    serde_json::to_value(ls.iter().map(ShiftedLattice::to_doc).collect::<Vec<_>>())
        .expect("lattices serialize")
}

fn point_doc(v: &[Scalar]) -> Vec<ScalarDoc> {
    v.iter().map(ScalarDoc::from_scalar).collect()
}

fn lattices(job: &JobSpec) -> Result<Value> {
    let fs = expressions(job)?;
    let model = ModelSystem::new(&fs, job.seed)?;
    let family = model.nontransversal_loci();
    let chamber = model.sample_chamber(&family, job.seed)?;
    let ls = model.zero_lattices(&chamber)?;
    Ok(json!({
        "chamber": { "point": point_doc(&chamber.point), "active": chamber.active },
        "lattices": lattice_docs(&ls),
        "density": density_doc(&density_sum(model.basis().ambient(), &ls)?, job),
    }))
}

fn chambers(job: &JobSpec) -> Result<Value> {
    let fs = expressions(job)?;
    let model = ModelSystem::new(&fs, job.seed)?;
    let family = model.nontransversal_loci();
    let mut samples = Vec::new();
    let mut densities = Vec::new();
    for i in 0..job.samples.max(1) {
        let seed = job.seed.wrapping_add(i as u64);
        let chamber = model.sample_chamber(&family, seed)?;
        let d = model.density(&chamber)?;
        samples.push(json!({
            "seed": seed,
            "point": point_doc(&chamber.point),
            "active": chamber.active,
            "density": density_doc(&d, job),
        }));
        densities.push(d);
    }
    let family_doc: Vec<Vec<Vec<ScalarDoc>>> = family
        .subspaces
        .iter()
        .map(|s| s.iter().map(|v| point_doc(v)).collect())
        .collect();
    Ok(json!({
        "model_dim": model.basis().rank(),
        "family": family_doc,
        "chambers": samples,
        "independent": densities.windows(2).all(|w| w[0] == w[1]),
    }))
}

fn load_class(input: &str, job: &JobSpec) -> Result<PolytopeClass> {
    PolytopeClass::from_doc(&load_doc::<ClassDoc>(input)?, job.field, job.dim)
}

fn pair(job: &JobSpec) -> Result<Value> {
    let classes = job
        .inputs
        .iter()
        .map(|i| load_class(i, job))
        .collect::<Result<Vec<_>>>()?;
    match classes.as_slice() {
        [a, b] => Ok(json!({ "value": a.pair(b)?.to_string() })),
        [a] if a.degree() == a.ambient() && job.probes.is_none() => {
            Ok(json!({ "value": a.top_pairing()?.to_string() }))
        }
        [a] => {
            let (probes, family) = match &job.probes {
                Some(path) => {
                    let docs: Vec<ClassDoc> = load_doc(&path.to_string_lossy())?;
                    let ps = docs
                        .iter()
                        .map(|d| PolytopeClass::from_doc(d, job.field, Some(a.ambient())))
                        .collect::<Result<Vec<_>>>()?;
                    (ps, path.display().to_string())
                }
                None => (
                    default_probes(a.ambient(), a.ambient() - a.degree(), &[a]),
                    "default".to_string(),
                ),
            };
            Ok(match a.is_zero_class(&probes)? {
                ZeroVerdict::Nonzero { witness, pairing } => json!({
                    "verdict": "nonzero",
                    "witness": witness.to_doc(),
                    "pairing": pairing.to_string(),
                    "probe_family": family,
                }),
                ZeroVerdict::ZeroRelativeToProbes { probes } => json!({
                    "verdict": "zero-relative-to-probes",
                    "probes": probes,
                    "probe_family": family,
                }),
            })
        }
        _ => Err(Error::Precondition(format!(
            "pair takes one or two classes, got {}",
            classes.len()
        ))),
    }
}
