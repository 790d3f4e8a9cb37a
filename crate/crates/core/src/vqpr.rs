//! Hybrid Richardson iteration driven by circuit measurements.
//!
//! Each step L2-normalizes the current iterate, encodes it with
//! [`build_qsvd_circuit_with`], and reads out per-qubit probabilities of
//! measuring 1 (qubit `j` stands for node `j`). The readout, rescaled to sum
//! to 1, replaces `x` in the damped update: `alpha * P q + (1 - alpha) / n`.
//!
//! A Hadamard followed by any `RX` leaves a qubit in `|+>` up to a global
//! phase, and the ladder is diagonal. The Z-basis statistics of this circuit
//! are therefore uniform for every input, and the exact estimate is always
//! the uniform vector.

use std::fmt;
use std::str::FromStr;

use crate::classical::{damped_update, iterate, validate_common, RankVector, SolverReport};
use crate::error::{Error, Result};
use crate::graph::TransitionMatrix;
use crate::qsvd::{build_qsvd_circuit_with, LadderVariant};
use crate::statevector::StateVector;

/// Measurement budget for each quantum estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    /// Use exact marginals from the statevector.
    Exact,
    Sampled(u64),
}

impl fmt::Display for Shots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shots::Exact => f.write_str("exact"),
            Shots::Sampled(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for Shots {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exact" {
            return Ok(Shots::Exact);
        }
        match s.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(Shots::Sampled(n)),
            _ => Err(Error::InvalidConfig(format!(
                "shots must be a positive integer or `exact`, got `{s}`"
            ))),
        }
    }
}

/// `ceil(log2 n)` shots, at least one.
pub fn paper_shot_count(n: usize) -> u64 {
    (n.max(2) as f64).log2().ceil() as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqprConfig {
    pub alpha: f64,
    pub epsilon: f64,
    pub shots: Shots,
    pub seed: u64,
    pub max_iters: usize,
    pub ladder: LadderVariant,
}

impl Default for VqprConfig {
    fn default() -> Self {
        Self {
            alpha: 0.85,
            epsilon: 1e-3,
            shots: Shots::Sampled(4096),
            seed: 0,
            max_iters: 1000,
            ladder: LadderVariant::Triangular,
        }
    }
}

impl VqprConfig {
    pub fn exact() -> Self {
        Self {
            shots: Shots::Exact,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(self.alpha, self.epsilon, self.max_iters)?;
        if self.shots == Shots::Sampled(0) {
            return Err(Error::InvalidConfig("shots must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateSource {
    Exact,
    Sampled { shots: u64, seed: u64 },
}

/// Per-node readout, nonnegative and summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumEstimate {
    pub q: Vec<f64>,
    pub source: EstimateSource,
}

/// Seed for iteration `iteration` of a sampled run: the SplitMix64 output
/// for state `seed + iteration * 0x9E3779B97F4A7C15`.
pub fn iteration_seed(seed: u64, iteration: usize) -> u64 {
    let mut z = seed.wrapping_add((iteration as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Measures the encoding circuit for `x`. Sampled runs use `config.seed`.
pub fn quantum_rank_estimate(x: &RankVector, config: &VqprConfig) -> Result<QuantumEstimate> {
    let norm = x.values().iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let unit: Vec<f64> = x.values().iter().map(|v| v / norm).collect();
    let circuit = build_qsvd_circuit_with(&unit, config.ladder)?;
    let mut state = StateVector::new_zero_state(unit.len())?;
    state.apply_circuit(&circuit)?;

    let (raw, source) = match config.shots {
        Shots::Exact => (state.marginal_one_probs(), EstimateSource::Exact),
        Shots::Sampled(shots) => {
            let record = state.sample(shots, config.seed)?;
            (
                record.marginal_one_frequencies(),
                EstimateSource::Sampled {
                    shots,
                    seed: config.seed,
                },
            )
        }
    };

    let total: f64 = raw.iter().sum();
    let n = raw.len();
    let q = if total > 0.0 {
        raw.iter().map(|m| m / total).collect()
    } else {
        vec![1.0 / n as f64; n]
    };
    Ok(QuantumEstimate { q, source })
}

fn step_with_estimate(
    p: &TransitionMatrix,
    x: &RankVector,
    config: &VqprConfig,
) -> Result<(RankVector, QuantumEstimate)> {
    if x.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: x.len(),
        });
    }
    let estimate = quantum_rank_estimate(x, config)?;
    let next = RankVector::new(damped_update(p, &estimate.q, config.alpha)?)?;
    Ok((next, estimate))
}

pub fn vqpr_step(p: &TransitionMatrix, x: &RankVector, config: &VqprConfig) -> Result<RankVector> {
    step_with_estimate(p, x, config).map(|(next, _)| next)
}

/// Iterates [`vqpr_step`] from the uniform vector. Iteration `k` samples with
/// `iteration_seed(config.seed, k)`.
pub fn vqpr_solve(p: &TransitionMatrix, config: &VqprConfig) -> Result<(RankVector, SolverReport)> {
    config.validate()?;
    iterate(p.n(), config.epsilon, config.max_iters, |iteration, x| {
        let step_config = VqprConfig {
            seed: iteration_seed(config.seed, iteration),
            ..*config
        };
        let (next, estimate) = step_with_estimate(p, x, &step_config)?;
        let seed = match estimate.source {
            EstimateSource::Sampled { seed, .. } => Some(seed),
            EstimateSource::Exact => None,
        };
        Ok((next, Some(estimate.q), seed))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{AdjacencyMatrix, NormMode};

    fn paper_p(mode: NormMode) -> TransitionMatrix {
        let a = AdjacencyMatrix::from_rows(&[
            vec![0, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 0, 1],
            vec![1, 1, 1, 1, 1, 0],
        ])
        .unwrap();
        TransitionMatrix::build(&a, mode).unwrap()
    }

    #[test]
    fn shots_parsing() {
        assert_eq!("exact".parse::<Shots>().unwrap(), Shots::Exact);
        assert_eq!("4096".parse::<Shots>().unwrap(), Shots::Sampled(4096));
        assert!("0".parse::<Shots>().is_err());
        assert!("-3".parse::<Shots>().is_err());
    }

    #[test]
    fn paper_shots() {
        assert_eq!(paper_shot_count(6), 3);
        assert_eq!(paper_shot_count(1), 1);
        assert_eq!(paper_shot_count(8), 3);
    }

    #[test]
    fn symmetric_two_node_estimate() {
        let x = RankVector::new(vec![1.0, 1.0]).unwrap();
        let e = quantum_rank_estimate(&x, &VqprConfig::exact()).unwrap();
        assert_eq!(e.source, EstimateSource::Exact);
        assert!((e.q[0] - 0.5).abs() < 1e-12 && (e.q[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn estimate_rejects_zero_vector() {
        let x = RankVector::new(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            quantum_rank_estimate(&x, &VqprConfig::exact()),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn step_edge_cases() {
        let p = paper_p(NormMode::Inf);
        let x = RankVector::uniform(6);
        let config = VqprConfig {
            alpha: 0.0,
            ..VqprConfig::exact()
        };
        let y = vqpr_step(&p, &x, &config).unwrap();
        assert!(y.values().iter().all(|&v| v == 1.0 / 6.0));

        let zero = TransitionMatrix::zeros(6).unwrap();
        let y = vqpr_step(&zero, &x, &VqprConfig::exact()).unwrap();
        assert!(y.values().iter().all(|&v| (v - 0.15 / 6.0).abs() < 1e-15));

        assert!(matches!(
            vqpr_step(&p, &RankVector::uniform(4), &VqprConfig::exact()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_damping_converges_fast() {
        let p = paper_p(NormMode::One);
        let config = VqprConfig {
            alpha: 0.0,
            ..VqprConfig::default()
        };
        let (x, report) = vqpr_solve(&p, &config).unwrap();
        assert!(report.converged && report.iterations <= 2);
        assert!(x.values().iter().all(|&v| (v - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn sampled_runs_are_reproducible() {
        let p = paper_p(NormMode::Inf);
        let config = VqprConfig {
            seed: 17,
            ..VqprConfig::default()
        };
        let a = vqpr_solve(&p, &config).unwrap();
        let b = vqpr_solve(&p, &config).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.trace, b.1.trace);
        let seeds: Vec<_> = a.1.trace.iter().map(|r| r.seed.unwrap()).collect();
        assert_eq!(seeds[0], iteration_seed(17, 1));
    }

    #[test]
    fn iteration_seeds_differ() {
        let seeds: Vec<u64> = (1..50).map(|k| iteration_seed(7, k)).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
        // SplitMix64 reference output for state 0x9E3779B97F4A7C15.
        assert_eq!(iteration_seed(0, 1), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn max_iters_reports_non_convergence() {
        let p = paper_p(NormMode::Inf);
        let config = VqprConfig {
            max_iters: 1,
            ..VqprConfig::exact()
        };
        let (_, report) = vqpr_solve(&p, &config).unwrap();
        assert_eq!(report.iterations, 1);
        assert!(!report.converged);
    }
}
