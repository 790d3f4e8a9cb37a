use std::path::{Path, PathBuf};

use qrank::{
    paper_shot_count, parse_edge_list, AdjacencyMatrix, LadderVariant, NormMode, Shots,
    SolverConfig, VqprConfig,
};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Classical,
    Quantum,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub const CLASSICAL_EPSILON: f64 = 1e-6;
pub const QUANTUM_EPSILON: f64 = 1e-3;

/// Everything needed to reproduce one `rank` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub input: PathBuf,
    pub norm: NormMode,
    pub method: Method,
    pub alpha: f64,
    /// Overrides both per-method defaults when set.
    pub epsilon: Option<f64>,
    pub shots: Shots,
    pub paper_shots: bool,
    pub seed: u64,
    pub max_iters: usize,
    pub format: Format,
    pub ladder: LadderVariant,
    pub power_iteration: bool,
    pub trace: Option<PathBuf>,
}

impl RunManifest {
    pub fn classical_config(&self) -> SolverConfig {
        SolverConfig {
            alpha: self.alpha,
            epsilon: self.epsilon.unwrap_or(CLASSICAL_EPSILON),
            max_iters: self.max_iters,
        }
    }

    pub fn quantum_config(&self, n: usize) -> VqprConfig {
        let shots = if self.paper_shots {
            Shots::Sampled(paper_shot_count(n))
        } else {
            self.shots
        };
        VqprConfig {
            alpha: self.alpha,
            epsilon: self.epsilon.unwrap_or(QUANTUM_EPSILON),
            shots,
            seed: self.seed,
            max_iters: self.max_iters,
            ladder: self.ladder,
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        self.classical_config()
            .validate()
            .and_then(|_| self.quantum_config(1).validate())
            .map_err(|e| Failure::Input(e.to_string()))
    }
}

/// Reads a graph as JSON (`{"n": .., "rows": ..}`) or as an edge list.
pub fn load_graph(path: &Path) -> Result<AdjacencyMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let is_json =
        path.extension().is_some_and(|ext| ext == "json") || text.trim_start().starts_with('{');
    let parsed = if is_json {
        AdjacencyMatrix::from_json(&text)
    } else {
        parse_edge_list(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}
