//! Graph ranking with classical Richardson PageRank and a variational quantum
//! variant driven by a dense statevector simulator.
//!
//! Edge convention throughout: `A[i][j] = 1` means a link from node `j` to
//! node `i`. The edge-list text format lists links as `src dst`.

pub mod classical;
pub mod error;
pub mod graph;
pub mod qsvd;
pub mod statevector;
pub mod vqpr;

pub use classical::{
    normalize_ranks, oracle_direct_solve, power_iteration_solve, richardson_solve, richardson_step,
    IterationRecord, RankVector, SolverConfig, SolverReport,
};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, AdjacencyMatrix, NormMode, TransitionMatrix};
pub use qsvd::{
    build_qsvd_circuit, build_qsvd_circuit_with, encoding_angles, ladder_angles, EncodingAngles,
    LadderAngles, LadderVariant,
};
pub use statevector::{Circuit, Gate, MeasurementRecord, StateVector, MAX_QUBITS};
pub use vqpr::{
    iteration_seed, paper_shot_count, quantum_rank_estimate, vqpr_solve, vqpr_step, EstimateSource,
    QuantumEstimate, Shots, VqprConfig,
};
