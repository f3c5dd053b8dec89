//! Command-line front end: load presentations, run the engines, emit Betti
//! tables and verification reports.
//!
//! Exit codes: 0 success, 2 bad input, 3 validation failure, 4 role or
//! binding mismatch, 5 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use fachom_core::algebra::{Generator, GradedSpacePresentation, WgAlgebra};
use fachom_core::bar::cyclic_bar;
use fachom_core::complexes::BettiTable;
use fachom_core::error::Error;
use fachom_core::excision::{evaluate, parse_gluing, CoefficientAssignment};
use fachom_core::freeconf::{conf_labeled_homology, free_en_dims};
use fachom_core::io;
use fachom_core::lie::{ce_chains, WgLieAlgebra};
use fachom_core::model::CommutativeModel;
use fachom_core::presets;
use fachom_core::simplicial::{builtin_model, space_tensor, FiniteSimplicialSet};
use fachom_core::verify;

#[derive(Parser)]
#[command(
    name = "fachom",
    about = "Exact homology engine for weight-graded algebras: Hochschild and bar complexes, \
             Chevalley-Eilenberg chains, space tensors and configuration dimensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Weight window: computations run for |weight| <= N.
    #[arg(short = 'w', long, global = true, default_value_t = 3)]
    max_weight: i64,

    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the primary output to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for weight slices and verification checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology (cyclic bar complex) of an algebra.
    Hochschild {
        /// Preset name (polynomial, exterior, truncated-poly, tensor1,
        /// tensor2, sym-mixed), preset:NAME, or a JSON presentation file.
        algebra: String,
    },
    /// Evaluate a gluing expression, e.g. "circle(A)" or "glue(L; A; R)".
    Excise {
        /// The expression; leaf names resolve through --bindings or presets.
        expr: String,
        /// JSON file mapping piece names to {"preset": ...} or {"file": ...}.
        #[arg(long)]
        bindings: Option<PathBuf>,
    },
    /// Run verification checks from the registry.
    Verify {
        /// Check selectors such as "hoch-duality:heisenberg" or family
        /// prefixes such as "env-circle"; use --all for the whole registry.
        selectors: Vec<String>,
        /// Run every registered check.
        #[arg(long)]
        all: bool,
    },
    /// Tensor of a simplicial model with a commutative algebra.
    HigherHh {
        /// Simplicial preset (point, interval, circle, sphere2, torus) or a
        /// JSON file with kind "simplicial".
        model: String,
        /// Commutative algebra preset or presentation file.
        algebra: String,
    },
    /// Dimension table of the free n-disk algebra on given generators.
    FreeDims {
        /// Number of disk dimensions n >= 1.
        #[arg(short = 'n', long)]
        disks: u32,
        /// Generators as name:degree:weight, comma separated.
        generators: String,
    },
    /// Labeled configuration homology over a commutative cochain model.
    Conf {
        /// Model preset (point, euclidean, circle, sphere-collar:M) or a
        /// JSON file with kind "model".
        model: String,
        #[arg(short = 'n', long)]
        disks: u32,
        generators: String,
    },
    /// Chevalley-Eilenberg chains or cochains of a Lie algebra.
    Ce {
        /// Lie preset (abelian1..3, heisenberg, filiform) or a JSON file.
        lie: String,
        /// Which complex to compute.
        #[arg(value_parser = ["chains", "cochains"])]
        variant: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SyntaxError { .. }
        | Error::Input { .. }
        | Error::UnknownModel { .. }
        | Error::InvalidCodim { .. } => 2,
        Error::Validation { .. }
        | Error::MixedWeightSigns { .. }
        | Error::DifferentialSquareNonzero { .. }
        | Error::CompositionNonzero { .. }
        | Error::StraighteningOverflow { .. }
        | Error::UnboundedWeight { .. }
        | Error::LevelCapTooSmall { .. } => 3,
        Error::RoleMismatch { .. } => 4,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {path:?}: {e}"),
    })
}

/// Resolves an algebra argument: explicit preset:NAME, a file on disk, or a
/// bare preset name.
fn resolve_algebra(spec: &str, max_weight: i64) -> Result<Arc<WgAlgebra>, Failure> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return Ok(presets::algebra_preset(name, max_weight)?);
    }
    if std::path::Path::new(spec).exists() {
        let text = read_file(spec)?;
        return Ok(io::load_algebra(&text, max_weight)?);
    }
    Ok(presets::algebra_preset(spec, max_weight)?)
}

fn resolve_lie(spec: &str, max_weight: i64) -> Result<WgLieAlgebra, Failure> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return Ok(presets::lie_preset(name, max_weight)?);
    }
    if std::path::Path::new(spec).exists() {
        let text = read_file(spec)?;
        return Ok(io::load_lie(&text, max_weight)?);
    }
    Ok(presets::lie_preset(spec, max_weight)?)
}

fn resolve_simplicial(spec: &str, max_weight: i64) -> Result<FiniteSimplicialSet, Failure> {
    if std::path::Path::new(spec).exists() {
        let text = read_file(spec)?;
        return Ok(io::load_simplicial(&text)?);
    }
    Ok(builtin_model(spec, max_weight)?)
}

fn resolve_model(spec: &str, n: u32) -> Result<CommutativeModel, Failure> {
    if std::path::Path::new(spec).exists() {
        let text = read_file(spec)?;
        return Ok(io::load_model(&text)?);
    }
    Ok(presets::model_preset(spec, n)?)
}

/// Parses "x:0:1,y:1:1" into a presentation.
fn parse_generators(text: &str) -> Result<GradedSpacePresentation, Failure> {
    let mut generators = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let fields: Vec<&str> = part.trim().split(':').collect();
        if fields.len() != 3 {
            return Err(Failure {
                code: 2,
                message: format!("generator {part:?} must be name:degree:weight"),
            });
        }
        let degree: i64 = fields[1].parse().map_err(|_| Failure {
            code: 2,
            message: format!("bad degree in {part:?}"),
        })?;
        let weight: i64 = fields[2].parse().map_err(|_| Failure {
            code: 2,
            message: format!("bad weight in {part:?}"),
        })?;
        generators.push(Generator {
            name: fields[0].to_string(),
            degree,
            weight,
        });
    }
    Ok(GradedSpacePresentation {
        generators,
        relations: Vec::new(),
    })
}

fn emit(table: &BettiTable, format: Format, output: &Option<PathBuf>) -> Result<(), Failure> {
    let text = match format {
        Format::Table => table.to_grid_string(),
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("tables always serialize");
            s.push('\n');
            s
        }
    };
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {path:?}: {e}"),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let w = cli.max_weight;
    if w < 0 {
        return Err(Failure {
            code: 2,
            message: "--max-weight must be nonnegative".into(),
        });
    }
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Hochschild { algebra } => {
            let a = resolve_algebra(&algebra, w)?;
            let complex = cyclic_bar(&a, w)?;
            let full_weights = -w..=w;
            let degrees = complex.space().degree_range().unwrap_or(0..=0);
            let table = complex.homology_jobs(full_weights, degrees, jobs)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
        Command::Excise { expr, bindings } => {
            let parsed = parse_gluing(&expr)?;
            let mut assignment = CoefficientAssignment::new();
            match bindings {
                Some(path) => {
                    let text = read_file(&path.display().to_string())?;
                    let wire = io::parse_bindings(&text)?;
                    for (name, binding) in wire {
                        let algebra = match (&binding.preset, &binding.file) {
                            (Some(preset), None) => presets::algebra_preset(preset, w)?,
                            (None, Some(file)) => {
                                let text = read_file(file)?;
                                io::load_algebra(&text, w)?
                            }
                            _ => {
                                return Err(Failure {
                                    code: 2,
                                    message: format!(
                                        "binding {name:?} needs exactly one of preset/file"
                                    ),
                                })
                            }
                        };
                        assignment.bind_algebra(name, algebra);
                    }
                }
                None => {
                    // bare preset names are directly usable as pieces
                    for name in presets::ALGEBRA_PRESETS {
                        assignment.bind_algebra(*name, presets::algebra_preset(name, w)?);
                    }
                }
            }
            let table = evaluate(&parsed, &assignment, w)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
        Command::Verify { selectors, all } => {
            let ids = if all || selectors.is_empty() {
                verify::select_checks(&[])?
            } else {
                verify::select_checks(&selectors)?
            };
            let report = verify::run_selected(&ids, w, jobs)?;
            for check in &report.checks {
                println!("{}: {}", check.id, check.status);
            }
            println!(
                "overall: {} ({} checks, |weight| <= {w})",
                if report.pass { "PASS" } else { "FAIL" },
                report.checks.len()
            );
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            let path = cli
                .output
                .unwrap_or_else(|| PathBuf::from("verify-report.json"));
            std::fs::write(&path, json).map_err(|e| Failure {
                code: 2,
                message: format!("cannot write report {path:?}: {e}"),
            })?;
            Ok(if report.pass { 0 } else { 5 })
        }
        Command::HigherHh { model, algebra } => {
            let x = resolve_simplicial(&model, w)?;
            let a = resolve_algebra(&algebra, w)?;
            let complex = space_tensor(&x, &a, w)?;
            let degrees = complex.space().degree_range().unwrap_or(0..=0);
            let table = complex.homology_jobs(-w..=w, degrees, jobs)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
        Command::FreeDims { disks, generators } => {
            let v = parse_generators(&generators)?;
            let table = free_en_dims(disks, &v, w)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
        Command::Conf {
            model,
            disks,
            generators,
        } => {
            let m = resolve_model(&model, disks)?;
            let v = parse_generators(&generators)?;
            let table = conf_labeled_homology(&m, disks, &v, w)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
        Command::Ce { lie, variant } => {
            let g = resolve_lie(&lie, w)?;
            let complex = match variant.as_str() {
                "chains" => ce_chains(&g, w)?,
                "cochains" => fachom_core::algebra::ce_cochains(&g, w)?.carrier().clone(),
                _ => unreachable!("clap restricts the variant"),
            };
            let degrees = complex.space().degree_range().unwrap_or(0..=0);
            let table = complex.homology_jobs(-w..=w, degrees, jobs)?;
            emit(&table, cli.format, &cli.output)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
