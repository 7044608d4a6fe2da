//! Command-line surface.
//!
//! Machine-readable results go to stdout, diagnostics to stderr. Exit codes:
//! 0 on success, 1 when an input fails validation, 2 on usage errors.

mod document;
mod expr;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub use document::{ingest, ComponentDocument, ComponentRecord};
pub use expr::{canonical_quad, canonicalize_expression, parse_expression, ExprError, IndexExpression, Term};

use crate::fuzzy::{fuzzy_riemann_graph, fuzzy_union, LeviCivitaLoop};
use crate::graphana::{enumerate_variants, k6_structure, ExportFormat, GraphError, Orientation, RiemannGraphSpec};
use crate::petrov::{self, PetrovError, PetrovType, RicciFlatResiduals};
use crate::symcore::{
    generalized_count, independent_component_count, IndexQuad, PairBasis, RiemannComponents, SymError,
    DEFAULT_INGEST_TOL,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Petrov(#[from] PetrovError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fuzzy(#[from] crate::fuzzy::FuzzyError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "curvgraph",
    version,
    about = "Curvature symmetries, graph analogs and Petrov classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    Lex,
    Duad,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

impl From<FormatArg> for ExportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dot => ExportFormat::Dot,
            FormatArg::Json => ExportFormat::Structured,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphKind {
    Variant,
    K6,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrientationArg {
    Cw,
    Ccw,
}

#[derive(Debug, clap::Args)]
struct InputArgs {
    /// Component document (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Project onto the cyclic-identity subspace after ingestion
    #[arg(long)]
    enforce_bianchi: bool,
    /// Absolute tolerance for duplicate components
    #[arg(long, default_value_t = DEFAULT_INGEST_TOL)]
    ingest_tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symmetry, cyclic-identity and Ricci residual report
    Check(InputArgs),
    /// Canonicalize an index expression
    Canon {
        #[arg(conflicts_with = "expr_flag", required_unless_present = "expr_flag")]
        expr: Option<String>,
        #[arg(long = "expr", id = "expr_flag")]
        expr_flag: Option<String>,
        /// Eliminate the dependent quad through the cyclic identity
        #[arg(long)]
        bianchi: bool,
    },
    /// Emit the 6x6 pair matrix
    Matrix {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "lex")]
        basis: BasisArg,
        /// Raise the row duad with the frame metric (duad basis only)
        #[arg(long)]
        mixed: bool,
    },
    /// Classify the complex matrix Ω and report the Ricci-flat residuals
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = petrov::DEFAULT_TOL)]
        tol: f64,
    },
    /// Independent component counts
    Count {
        #[arg(long)]
        n: u64,
        /// Number of cyclically permuting indices
        #[arg(long)]
        r: Option<u64>,
    },
    /// Emit a variant graph or the K6 slot graph
    Graph {
        #[arg(long, value_enum, default_value = "variant")]
        kind: GraphKind,
        /// Variant number 1..=6
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=6))]
        variant: u8,
        #[arg(long, value_enum, default_value = "cw")]
        orientation: OrientationArg,
        /// Component document, required for the K6 graph
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dot")]
        format: FormatArg,
    },
    /// Emit the fuzzy analog with its memberships
    Fuzzy {
        /// Attach the Levi-Civita loop at the bridge vertex
        #[arg(long)]
        union: bool,
        #[arg(long, default_value_t = 3)]
        alpha: u32,
        #[arg(long, value_enum, default_value = "dot")]
        format: FormatArg,
    },
    /// Emit a seeded sample tensor as a component document
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        ricci_flat: bool,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load(args: &InputArgs) -> Result<RiemannComponents, CliError> {
    ingest(&read(&args.input)?, args.ingest_tol, args.enforce_bianchi)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub bianchi_enforced: bool,
    pub antisymmetry_residual: f64,
    pub block_symmetry_residual: f64,
    pub bianchi_residual: f64,
    pub ricci_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci_flat_residuals: Option<RicciFlatResiduals>,
}

pub fn check_report(r: &RiemannComponents) -> CheckReport {
    let quads: Vec<IndexQuad> = IndexQuad::all(r.dim()).collect();
    let max_over = |f: &dyn Fn(IndexQuad) -> f64| quads.iter().map(|&q| f(q).abs()).fold(0.0, f64::max);
    CheckReport {
        n: r.dim(),
        bianchi_enforced: r.is_bianchi_enforced(),
        antisymmetry_residual: max_over(&|q| r.get(q) + r.get(q.swap_first()))
            .max(max_over(&|q| r.get(q) + r.get(q.swap_second()))),
        block_symmetry_residual: max_over(&|q| r.get(q) - r.get(q.swap_blocks())),
        bianchi_residual: max_over(&|q| r.cyclic_sum(q)),
        ricci_max: r.ricci_residual(),
        ricci_flat_residuals: petrov::ricci_flat_residuals(r).ok(),
    }
}

#[derive(Debug, Serialize)]
pub struct Multiplicity {
    pub eigenvalue: [f64; 2],
    pub algebraic: u8,
    pub geometric: u8,
}

#[derive(Debug, Serialize)]
pub struct ClassificationReport {
    pub eigenvalues: Vec<[f64; 2]>,
    pub multiplicities: Vec<Multiplicity>,
    pub nilpotency_degree: Option<u8>,
    pub petrov_type: PetrovType,
    pub bianchi_residual: f64,
    pub residuals: RicciFlatResiduals,
}

pub fn classification_report(r: &RiemannComponents, tol: f64) -> Result<ClassificationReport, CliError> {
    let residuals = petrov::ricci_flat_residuals(r)?;
    let w = petrov::omega(r)?;
    let sol = petrov::eigen(&w, tol)?;
    let petrov_type = petrov::classify(&w, tol)?;
    Ok(ClassificationReport {
        eigenvalues: sol.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
        multiplicities: sol
            .distinct
            .iter()
            .map(|d| Multiplicity {
                eigenvalue: [d.value.re, d.value.im],
                algebraic: d.algebraic,
                geometric: d.geometric,
            })
            .collect(),
        nilpotency_degree: sol.nilpotency_degree,
        petrov_type,
        bianchi_residual: r.bianchi_residual(),
        residuals,
    })
}

fn dispatch(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Check(args) => Ok(to_json(&check_report(&load(&args)?))),
        Command::Canon {
            expr,
            expr_flag,
            bianchi,
        } => {
            let text = expr.or(expr_flag).unwrap_or_default();
            let e = parse_expression(&text)?;
            Ok(canonicalize_expression(&e, bianchi).to_string())
        }
        Command::Matrix { input, basis, mixed } => {
            let r = load(&input)?;
            let (name, rows) = match (basis, mixed) {
                (BasisArg::Lex, true) => {
                    return Err(CliError::Usage("--mixed requires --basis duad".into()));
                }
                (BasisArg::Lex, false) => ("lex", r.covariant_matrix(PairBasis::Lex)),
                (BasisArg::Duad, false) => ("duad", r.covariant_matrix(PairBasis::Duad)),
                (BasisArg::Duad, true) => {
                    let s = petrov::assemble_six_matrix(&r)?;
                    ("duad", s.entries.iter().map(|row| row.to_vec()).collect())
                }
            };
            let pairs: Vec<String> = match basis {
                BasisArg::Lex => PairBasis::Lex.pairs(r.dim()),
                BasisArg::Duad => PairBasis::Duad.pairs(r.dim()),
            }
            .iter()
            .map(|(a, b)| format!("{a}{b}"))
            .collect();
            Ok(to_json(
                &json!({ "basis": name, "mixed": mixed, "pairs": pairs, "rows": rows }),
            ))
        }
        Command::Classify { input, tol } => {
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::Usage("--tol must be positive".into()));
            }
            let r = load(&input)?;
            Ok(to_json(&classification_report(&r, tol)?))
        }
        Command::Count { n, r } => match r {
            None => Ok(independent_component_count(n).to_string()),
            Some(r) => generalized_count(n, r)
                .map(|c| c.to_string())
                .ok_or_else(|| CliError::Invalid(format!("r = {r} is out of range for n = {n}"))),
        },
        Command::Graph {
            kind,
            variant,
            orientation,
            input,
            format,
        } => {
            let g = match kind {
                GraphKind::Variant => {
                    let o = match orientation {
                        OrientationArg::Cw => Orientation::Cw,
                        OrientationArg::Ccw => Orientation::Ccw,
                    };
                    let spec = RiemannGraphSpec::new(0, [1, 2, 3], o)?;
                    enumerate_variants(&spec)[usize::from(variant) - 1].to_graph()
                }
                GraphKind::K6 => {
                    let path = input.ok_or_else(|| CliError::Usage("--kind k6 requires --input".into()))?;
                    let r = ingest(&read(&path)?, DEFAULT_INGEST_TOL, false)?;
                    k6_structure(&r)?
                }
            };
            Ok(g.export(format.into()).trim_end().to_owned())
        }
        Command::Fuzzy { union, alpha, format } => {
            let spec = RiemannGraphSpec::standard();
            let mut g = fuzzy_riemann_graph(&spec);
            if union {
                g = fuzzy_union(&LeviCivitaLoop { vertex: spec.bridge() }, &g, alpha)?;
            }
            Ok(g.to_graph("fuzzy").export(format.into()).trim_end().to_owned())
        }
        Command::Sample { seed, ricci_flat } => {
            let r = RiemannComponents::random(seed, ricci_flat);
            let mut doc = ComponentDocument::from_tensor(&r);
            doc.metadata = Some(json!({ "seed": seed, "ricci_flat": ricci_flat }));
            Ok(doc.to_json())
        }
    }
}
