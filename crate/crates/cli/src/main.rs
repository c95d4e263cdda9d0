//! `gridrig` — rigidity analysis of reflection-symmetric frameworks in
//! quadrilateral norms.
//!
//! Six subcommands: `analyze` (rank report for a framework), `sparsity`
//! (gain-sparsity verdict for a quotient graph), `construct` (extract a
//! construction sequence), `realize` (certified placement of a tight
//! quotient), `crosscheck` (random rank-vs-combinatorics agreement harness)
//! and `fuzz` (the same plus sparsity-oracle agreement, persisting failures).
//!
//! Exit codes: 0 success, 1 domain error (well-shaped input that is not a
//! valid object, or a failed run), 2 schema error (malformed document; the
//! diagnostic names the JSON path of the offending field). Identical
//! invocations produce byte-identical output.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gridrig_core::characterize::crosscheck;
use gridrig_core::geometry::{QuadNorm, SymmetricFramework};
use gridrig_core::json::{
    crosscheck_to_value, framework_to_value, parse_framework, parse_norm, parse_quotient,
    rational_to_value, rigidity_report_to_value, sequence_to_value, sparsity_report_to_value,
    to_compact, to_pretty, JsonError,
};
use gridrig_core::moves::{extract_sequence, Mode};
use gridrig_core::random::{random_symmetric_framework, rng};
use gridrig_core::realize::{random_realize, realize, RigidityGoal};
use gridrig_core::rigidity::{
    lift_flex, orbit_matrix_anti, orbit_matrix_sym, rigidity_report, FlexClass,
};
use gridrig_core::sparsity::{check_gain_sparsity, oracle_check_by_edge_subsets, SparsityVariant};

#[derive(Parser)]
#[command(
    name = "gridrig",
    version,
    about = "Rigidity of reflection-symmetric bar-joint frameworks in quadrilateral norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sym,
    Anti,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Sym => Mode::Symmetric,
            ModeArg::Anti => Mode::AntiSymmetric,
        }
    }

    fn goal(self) -> RigidityGoal {
        match self {
            ModeArg::Sym => RigidityGoal::Symmetric,
            ModeArg::Anti => RigidityGoal::AntiSymmetric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "221")]
    TwoTwoOne,
    #[value(name = "220")]
    TwoTwoZero,
}

impl VariantArg {
    fn variant(self) -> SparsityVariant {
        match self {
            VariantArg::TwoTwoOne => SparsityVariant::TwoTwoOne,
            VariantArg::TwoTwoZero => SparsityVariant::TwoTwoZero,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact rank report (covering and orbit matrices) for a framework.
    Analyze {
        /// Framework document.
        #[arg(short, long)]
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include nullspace bases of both orbit matrices, lifted to
        /// covering-level velocity fields.
        #[arg(long)]
        flexes: bool,
    },
    /// Gain-sparsity verdict for a signed quotient graph.
    Sparsity {
        /// Quotient-graph document.
        #[arg(short, long)]
        input: PathBuf,
        /// Counting rule: 221 for (2,2,1), 220 for (2,2,0).
        #[arg(long)]
        variant: VariantArg,
        /// Judge membership in the loopless class: a graph with loops is
        /// reported as outside the class.
        #[arg(long)]
        loopless: bool,
        /// Write the verdict here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract a construction sequence for a gain-tight quotient graph.
    Construct {
        /// Quotient-graph document.
        #[arg(short, long)]
        input: PathBuf,
        /// Construction mode: sym from the unbalanced loop, anti (loopless
        /// graphs) from a two-triangle or K4-based seed.
        #[arg(long)]
        mode: ModeArg,
        /// Write the sequence here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Place a gain-tight quotient graph as a certified framework.
    Realize {
        /// Quotient-graph document.
        #[arg(short, long)]
        input: PathBuf,
        /// Which rigidity the placement must certify.
        #[arg(long)]
        mode: ModeArg,
        /// Norm: `linf`, `l1`, or a path to a custom norm document.
        #[arg(long, default_value = "linf")]
        norm: String,
        /// 0 (default) runs the deterministic constructive realizer; any
        /// other value seeds a randomized placement search instead.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the framework here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate random frameworks and verify that exact ranks agree with
    /// the combinatorial characterization on every rigidity predicate.
    Crosscheck {
        /// Number of random frameworks.
        #[arg(long)]
        random: usize,
        /// Maximum number of vertex orbits per framework.
        #[arg(long, default_value_t = 5)]
        max_orbits: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Crosscheck plus sparsity-oracle agreement on random inputs; failing
    /// cases are written to a directory for replay.
    Fuzz {
        /// Number of random cases.
        #[arg(long)]
        random: usize,
        /// Maximum number of vertex orbits per case.
        #[arg(long, default_value_t = 5)]
        max_orbits: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for failure artifacts (created only when needed).
        #[arg(long, default_value = "fuzz-artifacts")]
        out: PathBuf,
    },
}

/// A failure with the exit code it maps to.
enum Failure {
    /// Malformed input document: exit 2.
    Schema(String),
    /// Well-shaped input describing an invalid object, or a failed run:
    /// exit 1.
    Domain(String),
}

impl From<JsonError> for Failure {
    fn from(err: JsonError) -> Self {
        match err {
            JsonError::Schema { .. } => Failure::Schema(err.to_string()),
            JsonError::Domain(message) => Failure::Domain(message),
        }
    }
}

fn domain(err: impl Display) -> Failure {
    Failure::Domain(err.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Schema(message)) => {
            eprintln!("schema error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_norm(spec: &str) -> Result<QuadNorm, Failure> {
    match spec {
        "linf" => Ok(QuadNorm::linf()),
        "l1" => Ok(QuadNorm::l1()),
        path => Ok(parse_norm(&read_input(Path::new(path))?)?),
    }
}

/// One nullspace vector as a covering-level velocity field: a map from
/// covering-vertex label to a rational velocity, in user coordinates.
fn flex_to_value(fw: &SymmetricFramework, class: FlexClass, orbit_flex: &[gridrig_core::Q]) -> Value {
    let covering_flex = lift_flex(fw, class, orbit_flex);
    let cov = fw.covering();
    let mut field = serde_json::Map::new();
    for v in 0..cov.n_vertices() {
        field.insert(
            cov.vertex_label(v),
            json!([
                rational_to_value(&covering_flex[2 * v]),
                rational_to_value(&covering_flex[2 * v + 1]),
            ]),
        );
    }
    Value::Object(field)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            input,
            output,
            flexes,
        } => {
            let fw = parse_framework(&read_input(&input)?)?;
            let report = rigidity_report(&fw).map_err(domain)?;
            let mut value = rigidity_report_to_value(&report);
            if flexes {
                let sym_basis = orbit_matrix_sym(&fw).map_err(domain)?.matrix.nullspace();
                let anti_basis = orbit_matrix_anti(&fw).map_err(domain)?.matrix.nullspace();
                let lifted = json!({
                    "symmetric": sym_basis
                        .iter()
                        .map(|v| flex_to_value(&fw, FlexClass::Symmetric, v))
                        .collect::<Vec<_>>(),
                    "anti_symmetric": anti_basis
                        .iter()
                        .map(|v| flex_to_value(&fw, FlexClass::AntiSymmetric, v))
                        .collect::<Vec<_>>(),
                });
                value
                    .as_object_mut()
                    .expect("report is an object")
                    .insert("flexes".to_string(), lifted);
            }
            emit(output.as_ref(), &to_compact(&value))
        }
        Command::Sparsity {
            input,
            variant,
            loopless,
            output,
        } => {
            let q = parse_quotient(&read_input(&input)?)?;
            let report = check_gain_sparsity(&q, variant.variant()).map_err(domain)?;
            let mut value = sparsity_report_to_value(&report, &q);
            if loopless {
                let is_loopless = !q.has_loops();
                let obj = value.as_object_mut().expect("verdict is an object");
                if !is_loopless {
                    obj["sparse"] = json!(false);
                    obj["tight"] = json!(false);
                }
                obj.insert("loopless".to_string(), json!(is_loopless));
            }
            emit(output.as_ref(), &to_compact(&value))
        }
        Command::Construct {
            input,
            mode,
            output,
        } => {
            let q = parse_quotient(&read_input(&input)?)?;
            let seq = extract_sequence(&q, mode.mode()).map_err(domain)?;
            emit(output.as_ref(), &to_pretty(&sequence_to_value(&seq)))
        }
        Command::Realize {
            input,
            mode,
            norm,
            seed,
            output,
        } => {
            let q = parse_quotient(&read_input(&input)?)?;
            let norm = resolve_norm(&norm)?;
            let result = if seed == 0 {
                let seq = extract_sequence(&q, mode.mode()).map_err(domain)?;
                realize(&seq, &norm).map_err(domain)?
            } else {
                random_realize(&q, mode.goal(), &norm, seed, 64).map_err(domain)?
            };
            emit(
                output.as_ref(),
                &to_pretty(&framework_to_value(&result.framework)),
            )
        }
        Command::Crosscheck {
            random,
            max_orbits,
            seed,
        } => {
            let norm = QuadNorm::linf();
            let max_edges = 2 * max_orbits + 2;
            let mut r = rng(seed);
            let mut failures = 0usize;
            for _ in 0..random {
                let fw = random_symmetric_framework(&mut r, &norm, max_orbits, max_edges);
                let check = crosscheck(&fw).map_err(domain)?;
                if !check.all_agree() {
                    failures += 1;
                }
            }
            emit(
                None,
                &to_compact(&json!({"cases": random, "failures": failures})),
            )?;
            if failures > 0 {
                return Err(Failure::Domain(format!(
                    "{failures} of {random} crosscheck cases disagreed"
                )));
            }
            Ok(())
        }
        Command::Fuzz {
            random,
            max_orbits,
            seed,
            out,
        } => {
            let norm = QuadNorm::linf();
            let max_edges = 2 * max_orbits + 2;
            let mut r = rng(seed);
            let mut artifacts: Vec<String> = Vec::new();
            for case in 0..random {
                let fw = random_symmetric_framework(&mut r, &norm, max_orbits, max_edges);
                let q = fw.quotient();

                // Rank report against the monochrome characterization.
                let check = crosscheck(&fw).map_err(domain)?;
                if !check.all_agree() {
                    let artifact = json!({
                        "case": case,
                        "kind": "crosscheck_disagreement",
                        "framework": framework_to_value(&fw),
                        "report": crosscheck_to_value(&check, q),
                    });
                    artifacts.push(write_artifact(&out, case, "crosscheck", &artifact)?);
                }

                // Subset-scan sparsity checker against the edge-subset oracle.
                for variant in [SparsityVariant::TwoTwoOne, SparsityVariant::TwoTwoZero] {
                    let fast = check_gain_sparsity(q, variant).map_err(domain)?;
                    let slow = oracle_check_by_edge_subsets(q, variant).map_err(domain)?;
                    if fast.sparse != slow.sparse {
                        let artifact = json!({
                            "case": case,
                            "kind": "sparsity_disagreement",
                            "variant": variant.name(),
                            "quotient": gridrig_core::json::quotient_to_value(q),
                            "checker_sparse": fast.sparse,
                            "oracle_sparse": slow.sparse,
                        });
                        let tag = format!("sparsity-{}", variant.name().replace(['(', ')', ','], ""));
                        artifacts.push(write_artifact(&out, case, &tag, &artifact)?);
                    }
                }
            }
            let failures = artifacts.len();
            emit(
                None,
                &to_compact(&json!({
                    "cases": random,
                    "failures": failures,
                    "artifacts": artifacts,
                })),
            )?;
            if failures > 0 {
                return Err(Failure::Domain(format!(
                    "{failures} failing cases written to {}",
                    out.display()
                )));
            }
            Ok(())
        }
    }
}

fn write_artifact(dir: &Path, case: usize, tag: &str, value: &Value) -> Result<String, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Domain(format!("{}: {e}", dir.display())))?;
    let path = dir.join(format!("case-{case}-{tag}.json"));
    fs::write(&path, to_pretty(value))
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}
