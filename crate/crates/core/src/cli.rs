// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Exit codes: 0 success, 1 invalid input or failed
//! verification, 2 numerical ambiguity.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Matrix3;
use serde::Serialize;
use serde_json::json;

use crate::catalog::{self, CatalogAction};
use crate::error::{Error, Result};
use crate::lift;
use crate::linalg::{self, Vector};
use crate::orbit::{self, GroupContext};
use crate::quotient::{self, AnalyzeOptions, QuotientIsometryReport};
use crate::repr::{self, RepresentationSpec, DEFAULT_SEED};
use crate::verify;

pub const SEED_ENV: &str = "ORBIT_ISOM_SEED";
pub const DEFAULT_SAMPLES: usize = 200;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_AMBIGUOUS: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "orbit-isom",
    version,
    about = "Isometry groups of orbit spaces of orthogonal representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// RNG seed; overrides the document seed and ORBIT_ISOM_SEED.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample count (kernel test points for analyze, rotations or pairs otherwise).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute Isom(V/G)_0 for a representation document or catalog:<id>.
    Analyze {
        /// JSON document path or catalog:<id>.
        #[arg(value_name = "INPUT", conflicts_with = "input")]
        path: Option<String>,
        /// Same as the positional INPUT.
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Quotient distance between two points, e.g. `metric c5.json 1,0 0,1`.
    Metric {
        /// JSON document path or catalog:<id>.
        #[arg(long)]
        input: Option<String>,
        /// INPUT A B, or A B when --input is given.
        #[arg(value_name = "ARGS", num_args = 2..=3, allow_hyphen_values = true)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Lift rotations of the Hopf quotient sphere to U(1)-equivariant isometries.
    Lift {
        /// Nine comma-separated entries of a rotation, row-major.
        #[arg(long, allow_hyphen_values = true)]
        rotation: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// List catalog actions, or describe one.
    Catalog {
        /// Catalog id; omit to list all.
        id: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Verify {
        /// Comma-separated criterion ids or tags (hopf, sector, kernel, ...).
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Resolved per-run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<String>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub sample_count: usize,
    /// Explicit --samples, for commands whose default is not [`DEFAULT_SAMPLES`].
    pub sample_override: Option<usize>,
    pub format: Format,
}

impl RunConfig {
    fn new(input: Option<String>, common: &Common, default_samples: usize) -> Self {
        RunConfig {
            input,
            output: common.output.clone(),
            seed: common.seed,
            sample_count: common.samples.unwrap_or(default_samples),
            sample_override: common.samples,
            format: common.format,
        }
    }
}

/// Stage-tagged failure, rendered as `error [stage]: message`.
struct Failure {
    stage: &'static str,
    error: Error,
}

impl Failure {
    fn exit_code(&self) -> i32 {
        if self.error.is_ambiguity() {
            EXIT_AMBIGUOUS
        } else {
            EXIT_INVALID
        }
    }
}

trait At<T> {
    fn at(self, stage: &'static str) -> std::result::Result<T, Failure>;
}

impl<T, E: Into<Error>> At<T> for std::result::Result<T, E> {
    fn at(self, stage: &'static str) -> std::result::Result<T, Failure> {
        self.map_err(|e| match e.into() {
            Error::Stage { stage, source } => Failure {
                stage,
                error: *source,
            },
            error => Failure { stage, error },
        })
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn env_seed() -> std::result::Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Malformed(format!("{SEED_ENV}={v:?} is not an unsigned integer")))
            .at("config"),
        Err(_) => Ok(None),
    }
}

/// Seed precedence: flag, then the document, then the environment, then 0.
fn resolve_seed(flag: Option<u64>, document: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(s) = flag.or(document) {
        return Ok(s);
    }
    Ok(env_seed()?.unwrap_or(DEFAULT_SEED))
}

/// Load a representation from `catalog:<id>` or a JSON document path.
pub fn load_spec(input: &str) -> Result<(RepresentationSpec, Option<u64>)> {
    if let Some(id) = input.strip_prefix("catalog:") {
        let action = CatalogAction::by_id(id)?;
        return Ok((RepresentationSpec::catalog(id, action.dimension), None));
    }
    let text = std::fs::read_to_string(input).map_err(|source| Error::Read {
        path: input.to_string(),
        source,
    })?;
    let spec = repr::parse_spec(&text)?;
    let document_seed = serde_json::from_str::<serde_json::Value>(&text)?
        .get("seed")
        .and_then(serde_json::Value::as_u64);
    Ok((spec, document_seed))
}

fn parse_vector(s: &str) -> Result<Vector> {
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Malformed(format!("{t:?} in {s:?} is not a number")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Malformed(format!("non-finite entry in {s:?}")));
    }
    Ok(Vector::from_vec(values))
}

fn emit<T: Serialize>(
    cfg: &RunConfig,
    value: &T,
    text: impl FnOnce() -> String,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(value).at("output")? + "\n",
        Format::Text => text(),
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, body).at("output"),
        None => out.write_all(body.as_bytes()).at("output"),
    }
}

pub fn report_text(report: &QuotientIsometryReport) -> String {
    let mut s = String::new();
    let factors: Vec<&str> = report
        .compact_factors
        .iter()
        .map(|f| f.name.as_str())
        .collect();
    s += &format!(
        "Euclidean factor: {} (dim F = {})\n",
        report.notes.euclidean_factor, report.euclidean_factor_dim
    );
    s += &format!(
        "compact factors: {}\n",
        if factors.is_empty() {
            "none".to_string()
        } else {
            factors.join(" x ")
        }
    );
    s += &format!(
        "kernel: finite order {}, circle directions {}, contains Z(G) cap Isom_G(V)_0: {}\n",
        report.kernel.finite_order,
        report.kernel.circle_directions,
        report.kernel.contains_center_of_g
    );
    s += &format!(
        "boundary: {}, formula: {}\n",
        report.boundary, report.formula_applied
    );
    s += &format!(
        "rank: {}, dim Isom(V/G)_0: {}\n",
        report.rank, report.notes.quotient_dim
    );
    s += &format!(
        "theorem B: {}, theorem C: {}, seed: {}\n",
        report.theorem_b, report.theorem_c, report.seed
    );
    for c in &report.notes.caveats {
        s += &format!("note: {c}\n");
    }
    s
}

fn cmd_analyze(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let input = cfg
        .input
        .as_deref()
        .ok_or_else(|| Error::Malformed("analyze needs an input path or catalog:<id>".into()))
        .at("input")?;
    let (spec, document_seed) = load_spec(input).at("input")?;
    let seed = resolve_seed(cfg.seed, document_seed)?;
    let mut options = AnalyzeOptions::default();
    if let Some(n) = cfg.sample_override {
        options.kernel_samples = n;
    }
    let analysis = quotient::analyze(&spec.with_seed(seed), options).at("analyze")?;
    emit(cfg, &analysis.report, || report_text(&analysis.report), out)?;
    Ok(EXIT_OK)
}

fn cmd_metric(cfg: &RunConfig, a: &str, b: &str, out: &mut dyn Write) -> CmdResult {
    let input = cfg
        .input
        .as_deref()
        .ok_or_else(|| Error::Malformed("metric needs an input".into()))
        .at("input")?;
    let (spec, _) = load_spec(input).at("input")?;
    let ctx = match &spec.kind {
        repr::Kind::Finite => GroupContext::finite(input, &spec).at("enumerate")?,
        repr::Kind::Catalog(id) => GroupContext::Catalog(CatalogAction::by_id(id).at("input")?),
    };
    let pa = ctx.point(parse_vector(a).at("points")?);
    let pb = ctx.point(parse_vector(b).at("points")?);
    let distance = orbit::quotient_distance(&ctx, &pa, &pb).at("metric")?;
    let (method, bound) = match &ctx {
        GroupContext::Finite { group, .. } => (
            format!("exact minimum over {} group elements", group.order),
            0.0,
        ),
        GroupContext::Catalog(act) => (
            format!(
                "circle grid m={} with golden-section refinement",
                act.density
            ),
            act.grid_error_bound(pa.representative.norm().max(pb.representative.norm())),
        ),
    };
    let value = json!({
        "context": ctx.id(),
        "distance": distance,
        "method": method,
        "errorBound": bound,
    });
    emit(cfg, &value, || format!("{distance:.12}\n"), out)?;
    Ok(EXIT_OK)
}

fn cmd_lift(cfg: &RunConfig, rotation: Option<&str>, out: &mut dyn Write) -> CmdResult {
    if let Some(r) = rotation {
        let v = parse_vector(r).at("rotation")?;
        if v.len() != 9 {
            return Err(Failure {
                stage: "rotation",
                error: Error::VectorDimension {
                    expected: 9,
                    got: v.len(),
                },
            });
        }
        let r = Matrix3::from_row_slice(v.as_slice());
        let w = lift::lift_rotation(&r).at("lift")?;
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| w.lift[(i, j)]).collect())
            .collect();
        let value = json!({ "lift": rows, "residual": w.residual, "u1Residual": w.u1_residual });
        let text = || {
            let mut s = String::new();
            for row in &rows {
                s += &row
                    .iter()
                    .map(|x| format!("{x:>10.6}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                s += "\n";
            }
            s + &format!("residual {:.3e}\n", w.residual)
        };
        emit(cfg, &value, text, out)?;
        return Ok(EXIT_OK);
    }
    let seed = resolve_seed(cfg.seed, None)?;
    let mut rng = linalg::rng(seed, 0x11f);
    let (mut worst, mut worst_u1) = (0.0f64, 0.0f64);
    for _ in 0..cfg.sample_count {
        let w = lift::lift_rotation(&catalog::random_rotation3(&mut rng)).at("lift")?;
        worst = worst.max(w.residual);
        worst_u1 = worst_u1.max(w.u1_residual);
    }
    let metric = lift::verify_hopf_metric(cfg.sample_count, seed, catalog::DEFAULT_DENSITY);
    let passed = worst <= 1e-8 && worst_u1 <= 1e-9;
    let value = json!({
        "rotations": cfg.sample_count,
        "seed": seed,
        "maxResidual": worst,
        "maxU1Commutator": worst_u1,
        "passed": passed,
        "hopfMetric": metric,
    });
    let text = || {
        format!(
            "{} rotations lifted, max residual {:.3e}, max U(1) commutator {:.3e}\nHopf metric: max residual {:.3e} (grid m={}), {:.3e} refined\n",
            cfg.sample_count, worst, worst_u1, metric.max_residual_grid, metric.density, metric.max_residual_refined
        )
    };
    emit(cfg, &value, text, out)?;
    Ok(if passed { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_catalog(cfg: &RunConfig, id: Option<&str>, out: &mut dyn Write) -> CmdResult {
    match id {
        None => {
            let entries: Vec<_> = CatalogAction::all()
                .into_iter()
                .map(|a| json!({ "id": a.id, "dimension": a.dimension, "metadata": a.metadata }))
                .collect();
            let text = || {
                CatalogAction::all()
                    .iter()
                    .map(|a| {
                        format!(
                            "{:<20} R^{}  {}: {}\n",
                            a.id, a.dimension, a.metadata.group, a.metadata.description
                        )
                    })
                    .collect()
            };
            emit(cfg, &entries, text, out)?;
        }
        Some(id) => {
            let action = CatalogAction::by_id(id).at("catalog")?;
            if id == catalog::PRODUCT || id == catalog::TENSOR {
                let seed = resolve_seed(cfg.seed, None)?;
                let report = lift::non_lift_demo(id, cfg.sample_count, seed).at("sector")?;
                let value = json!({ "id": id, "dimension": action.dimension, "metadata": action.metadata, "nonLift": report });
                emit(cfg, &value, || report.to_string() + "\n", out)?;
            } else {
                let value =
                    json!({ "id": id, "dimension": action.dimension, "metadata": action.metadata });
                let text = || {
                    format!(
                        "{} on R^{}: {}\n{}\n",
                        action.metadata.group,
                        action.dimension,
                        action.metadata.description,
                        action.metadata.singular_isotropy_note
                    )
                };
                emit(cfg, &value, text, out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cfg: &RunConfig, only: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let seed = resolve_seed(cfg.seed, None)?;
    let report = verify::run_suite(seed, only);
    if report.criteria.is_empty() {
        return Err(Failure {
            stage: "verify",
            error: Error::Malformed(format!(
                "--only {:?} selects no criteria",
                only.unwrap_or("")
            )),
        });
    }
    let body = match cfg.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, body).at("output")?,
        None => out.write_all(body.as_bytes()).at("output")?,
    }
    Ok(if report.all_passed {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Analyze {
            path,
            input,
            common,
        } => cmd_analyze(
            &RunConfig::new(path.or(input), &common, DEFAULT_SAMPLES),
            out,
        ),
        Command::Metric {
            input,
            args,
            common,
        } => {
            let (input, a, b) = match (input, args.as_slice()) {
                (Some(i), [a, b]) => (Some(i), a.clone(), b.clone()),
                (None, [i, a, b]) => (Some(i.clone()), a.clone(), b.clone()),
                _ => {
                    let _ = writeln!(
                        err,
                        "error [input]: metric takes INPUT A B or --input INPUT A B"
                    );
                    return EXIT_INVALID;
                }
            };
            cmd_metric(
                &RunConfig::new(input, &common, DEFAULT_SAMPLES),
                &a,
                &b,
                out,
            )
        }
        Command::Lift { rotation, common } => cmd_lift(
            &RunConfig::new(None, &common, DEFAULT_SAMPLES),
            rotation.as_deref(),
            out,
        ),
        Command::Catalog { id, common } => cmd_catalog(
            &RunConfig::new(None, &common, DEFAULT_SAMPLES),
            id.as_deref(),
            out,
        ),
        Command::Verify { only, common } => cmd_verify(
            &RunConfig::new(None, &common, DEFAULT_SAMPLES),
            only.as_deref(),
            out,
        ),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error [{}]: {}", f.stage, f.error);
            f.exit_code()
        }
    }
}
