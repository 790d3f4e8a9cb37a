//! Command-line front-end for `qrank`.
//!
//! Exit codes: 0 when every requested solver converged, 1 for input or
//! configuration errors, 2 when a solver hit `--max-iters` or diverged.

pub mod manifest;
pub mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qrank::{
    build_qsvd_circuit_with, normalize_ranks, power_iteration_solve, richardson_solve, vqpr_solve,
    LadderVariant, NormMode, RankVector, Shots, SolverReport, TransitionMatrix, VqprConfig,
};

pub use manifest::{load_graph, Format, Method, RunManifest};
pub use report::{kendall_tau_b, RunOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "qrank",
    version,
    about = "Classical and variational quantum PageRank"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank the nodes of a graph.
    Rank(RankArgs),
    /// Run both solvers and compare their orderings.
    Compare(RankArgs),
    /// Print the encoding circuit for an iterate as JSON.
    DumpCircuit(DumpArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    /// Edge list (`src dst` per line) or JSON adjacency file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "classical")]
    pub method: Method,
    /// Transition matrix scaling: inf, one or column.
    #[arg(long, default_value = "inf")]
    pub norm: NormMode,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Convergence threshold on the L1 step [default: 1e-6 classical, 1e-3 quantum].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Shots per quantum estimate, or `exact`.
    #[arg(long, default_value = "4096")]
    pub shots: Shots,
    /// Use ceil(log2 n) shots per estimate.
    #[arg(long)]
    pub paper_shots: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write the per-iteration trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Controlled-phase ladder layout: triangular, full or none.
    #[arg(long, default_value = "triangular")]
    pub ladder: LadderVariant,
    /// Renormalize every classical iterate (power iteration).
    #[arg(long)]
    pub power_iteration: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    pub input: PathBuf,
    /// Number of quantum iterations to run before dumping.
    #[arg(long, default_value_t = 0)]
    pub iteration: usize,
    #[arg(long, default_value = "inf")]
    pub norm: NormMode,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value = "exact")]
    pub shots: Shots,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "triangular")]
    pub ladder: LadderVariant,
}

impl RankArgs {
    pub fn manifest(&self, method: Method) -> RunManifest {
        RunManifest {
            input: self.input.clone(),
            norm: self.norm,
            method,
            alpha: self.alpha,
            epsilon: self.epsilon,
            shots: self.shots,
            paper_shots: self.paper_shots,
            seed: self.seed,
            max_iters: self.max_iters,
            format: self.format,
            ladder: self.ladder,
            power_iteration: self.power_iteration,
            trace: self.trace.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Input(String),
    Solver(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Solver(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

fn solver_failure(e: qrank::Error) -> Failure {
    match e {
        qrank::Error::NonFinite { .. } | qrank::Error::NearSingular { .. } => {
            Failure::Solver(e.to_string())
        }
        other => Failure::Input(other.to_string()),
    }
}

fn outcome(
    method: &'static str,
    norm: NormMode,
    seed: Option<u64>,
    (x, report): (RankVector, SolverReport),
) -> Result<RunOutcome, Failure> {
    let ranks = normalize_ranks(&x).map_err(solver_failure)?.into_inner();
    Ok(RunOutcome {
        method,
        norm,
        ranks,
        iterations: report.iterations,
        converged: report.converged,
        residuals: report.residuals,
        seed,
        trace: report.trace,
    })
}

/// Runs the solvers named in `manifest`.
pub fn run_manifest(manifest: &RunManifest) -> Result<Vec<RunOutcome>, Failure> {
    manifest.validate()?;
    let graph = load_graph(&manifest.input)?;
    let p = TransitionMatrix::build(&graph, manifest.norm)
        .map_err(|e| Failure::Input(format!("{}: {e}", manifest.input.display())))?;

    let mut runs = Vec::new();
    if matches!(manifest.method, Method::Classical | Method::Both) {
        let config = manifest.classical_config();
        let (result, label) = if manifest.power_iteration {
            (power_iteration_solve(&p, &config), "power")
        } else {
            (richardson_solve(&p, &config), "classical")
        };
        runs.push(outcome(
            label,
            manifest.norm,
            None,
            result.map_err(solver_failure)?,
        )?);
    }
    if matches!(manifest.method, Method::Quantum | Method::Both) {
        let config = manifest.quantum_config(p.n());
        let seed = matches!(config.shots, Shots::Sampled(_)).then_some(config.seed);
        let result = vqpr_solve(&p, &config).map_err(solver_failure)?;
        runs.push(outcome("quantum", manifest.norm, seed, result)?);
    }
    Ok(runs)
}

fn rank(manifest: &RunManifest, stdout: &mut dyn Write) -> Result<u8, Failure> {
    let runs = run_manifest(manifest)?;
    if let Some(path) = &manifest.trace {
        std::fs::write(path, report::trace_json(&runs))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match manifest.format {
        Format::Table => report::table(&runs),
        Format::Json => report::json(&runs),
        Format::Csv => report::csv(&runs),
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("write failed: {e}")))?;
    Ok(if runs.iter().all(|r| r.converged) {
        0
    } else {
        2
    })
}

/// The circuit encoding the iterate after `args.iteration` quantum steps.
pub fn dump_circuit(args: &DumpArgs) -> Result<qrank::Circuit, Failure> {
    let graph = load_graph(&args.input)?;
    let n = graph.n();
    let x = if args.iteration == 0 {
        RankVector::uniform(n)
    } else {
        let p = TransitionMatrix::build(&graph, args.norm)
            .map_err(|e| Failure::Input(e.to_string()))?;
        let config = VqprConfig {
            alpha: args.alpha,
            shots: args.shots,
            seed: args.seed,
            max_iters: args.iteration,
            // Run exactly `iteration` steps.
            epsilon: f64::MIN_POSITIVE,
            ladder: args.ladder,
        };
        vqpr_solve(&p, &config).map_err(solver_failure)?.0
    };
    let norm = x.values().iter().map(|v| v * v).sum::<f64>().sqrt();
    let unit: Vec<f64> = x.values().iter().map(|v| v / norm).collect();
    build_qsvd_circuit_with(&unit, args.ladder).map_err(|e| Failure::Input(e.to_string()))
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Rank(args) => rank(&args.manifest(args.method), stdout),
        Command::Compare(args) => rank(&args.manifest(Method::Both), stdout),
        Command::DumpCircuit(args) => dump_circuit(args).and_then(|circuit| {
            let _ = writeln!(stderr, "gates: {}", circuit.len());
            writeln!(stdout, "{}", circuit.to_json())
                .map(|_| 0)
                .map_err(|e| Failure::Input(format!("write failed: {e}")))
        }),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "{failure}");
            failure.exit_code()
        }
    }
}
