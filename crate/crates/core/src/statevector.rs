//! Dense statevector simulator for the `H`, `RX` and controlled-phase gate set.
//!
//! Basis ordering: qubit 0 is the most significant bit of the amplitude
//! index, so on `n` qubits qubit `q` maps to bit `n - 1 - q`. Outcome
//! bitstrings read left to right from qubit 0.
//!
//! Sampling uses ChaCha8 (`rand_chacha`), seeded with `seed_from_u64`. Each
//! shot draws one `u64`, keeps its top 53 bits as a uniform `u` in `[0, 1)`,
//! and selects the first basis state whose cumulative probability exceeds
//! `u`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// A gate from the supported set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateJson", into = "GateJson")]
pub enum Gate {
    H {
        target: usize,
    },
    /// `exp(-i theta X / 2)`.
    Rx {
        target: usize,
        theta: f64,
    },
    /// `diag(1, 1, 1, e^{i beta})` on `(control, target)`.
    Cp {
        control: usize,
        target: usize,
        beta: f64,
    },
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    kind: String,
    params: Vec<f64>,
    targets: Vec<usize>,
}

impl From<Gate> for GateJson {
    fn from(g: Gate) -> Self {
        let (kind, params, targets) = match g {
            Gate::H { target } => ("H", vec![], vec![target]),
            Gate::Rx { target, theta } => ("RX", vec![theta], vec![target]),
            Gate::Cp {
                control,
                target,
                beta,
            } => ("CP", vec![beta], vec![control, target]),
        };
        GateJson {
            kind: kind.to_string(),
            params,
            targets,
        }
    }
}

impl TryFrom<GateJson> for Gate {
    type Error = String;

    fn try_from(g: GateJson) -> std::result::Result<Self, String> {
        match (g.kind.as_str(), g.params.as_slice(), g.targets.as_slice()) {
            ("H", [], &[target]) => Ok(Gate::H { target }),
            ("RX", &[theta], &[target]) => Ok(Gate::Rx { target, theta }),
            ("CP", &[beta], &[control, target]) => Ok(Gate::Cp {
                control,
                target,
                beta,
            }),
            (kind, params, targets) => Err(format!(
                "malformed {kind} gate: {} params, {} targets",
                params.len(),
                targets.len()
            )),
        }
    }
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H { target } | Gate::Rx { target, .. } => vec![target],
            Gate::Cp {
                control, target, ..
            } => vec![control, target],
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for qubit in self.qubits() {
            if qubit >= num_qubits {
                return Err(Error::QubitIndex { qubit, num_qubits });
            }
        }
        if let Gate::Cp {
            control, target, ..
        } = *self
        {
            if control == target {
                return Err(Error::RepeatedQubit(control));
            }
        }
        Ok(())
    }

    /// Row-major unitary on the gate's own qubits (2x2 or 4x4). For `Cp` the
    /// basis is `|control target>` with control as the high bit.
    pub fn matrix(&self) -> Vec<Complex64> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match *self {
            Gate::H { .. } => vec![
                c(FRAC_1_SQRT_2, 0.0),
                c(FRAC_1_SQRT_2, 0.0),
                c(FRAC_1_SQRT_2, 0.0),
                c(-FRAC_1_SQRT_2, 0.0),
            ],
            Gate::Rx { theta, .. } => {
                let (s, co) = (theta / 2.0).sin_cos();
                vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]
            }
            Gate::Cp { beta, .. } => {
                let mut m = vec![c(0.0, 0.0); 16];
                m[0] = c(1.0, 0.0);
                m[5] = c(1.0, 0.0);
                m[10] = c(1.0, 0.0);
                m[15] = Complex64::from_polar(1.0, beta);
                m
            }
        }
    }
}

/// An ordered gate program on a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    #[serde(rename = "n")]
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit json serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let circuit: Circuit = serde_json::from_str(text)?;
        for gate in &circuit.gates {
            gate.validate(circuit.num_qubits)?;
        }
        Ok(circuit)
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

impl StateVector {
    /// `|0...0>` on `n` qubits.
    pub fn new_zero_state(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the caller is responsible for normalization.
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    fn bit(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            Gate::H { target } | Gate::Rx { target, .. } => {
                let m = gate.matrix();
                let mask = self.bit(target);
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let a0 = self.amplitudes[i];
                        let a1 = self.amplitudes[i | mask];
                        self.amplitudes[i] = m[0] * a0 + m[1] * a1;
                        self.amplitudes[i | mask] = m[2] * a0 + m[3] * a1;
                    }
                }
            }
            Gate::Cp {
                control,
                target,
                beta,
            } => {
                let mask = self.bit(control) | self.bit(target);
                let phase = Complex64::from_polar(1.0, beta);
                for (i, amp) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask == mask {
                        *amp *= phase;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: circuit.num_qubits(),
            });
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    /// Z-basis outcome probabilities, indexed like the amplitudes.
    pub fn exact_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    /// Probability that each qubit reads 1.
    pub fn marginal_one_probs(&self) -> Vec<f64> {
        let probs = self.exact_probabilities();
        (0..self.num_qubits)
            .map(|q| {
                let mask = self.bit(q);
                probs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i & mask != 0)
                    .map(|(_, p)| p)
                    .sum()
            })
            .collect()
    }

    /// Draws `shots` full-register Z-basis outcomes. The state is left intact.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<MeasurementRecord> {
        if shots == 0 {
            return Err(Error::InvalidConfig("shots must be at least 1".into()));
        }
        let probs = self.exact_probabilities();
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cdf.push(acc);
        }
        let last_nonzero = probs
            .iter()
            .rposition(|&p| p > 0.0)
            .ok_or(Error::ZeroVector)?;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tallies = vec![0u64; probs.len()];
        for _ in 0..shots {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let idx = cdf.partition_point(|&c| c <= u).min(last_nonzero);
            tallies[idx] += 1;
        }

        let counts = tallies
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (format!("{i:0width$b}", width = self.num_qubits), c))
            .collect();
        Ok(MeasurementRecord {
            num_qubits: self.num_qubits,
            shots,
            seed,
            counts,
        })
    }
}

/// Shot counts keyed by outcome bitstring (qubit 0 leftmost).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub num_qubits: usize,
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
}

impl MeasurementRecord {
    pub fn count(&self, outcome: &str) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    /// Number of shots in which each qubit read 1.
    pub fn ones_per_qubit(&self) -> Vec<u64> {
        let mut ones = vec![0u64; self.num_qubits];
        for (bits, &c) in &self.counts {
            for (q, b) in bits.bytes().enumerate() {
                if b == b'1' {
                    ones[q] += c;
                }
            }
        }
        ones
    }

    /// Fraction of shots in which each qubit read 1.
    pub fn marginal_one_frequencies(&self) -> Vec<f64> {
        self.ones_per_qubit()
            .into_iter()
            .map(|c| c as f64 / self.shots as f64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn zero_state() {
        let s = StateVector::new_zero_state(1).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::new_zero_state(2).unwrap();
        assert_eq!(s.amplitudes().len(), 4);
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        assert!(matches!(
            StateVector::new_zero_state(25),
            Err(Error::QubitCount(25))
        ));
        assert!(StateVector::new_zero_state(0).is_err());
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::new_zero_state(1).unwrap();
        s.apply_gate(&Gate::H { target: 0 }).unwrap();
        assert!(close(
            s.amplitudes(),
            &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
            1e-15
        ));
    }

    #[test]
    fn rx_pi_flips() {
        let mut s = StateVector::new_zero_state(1).unwrap();
        s.apply_gate(&Gate::Rx {
            target: 0,
            theta: PI,
        })
        .unwrap();
        assert!(close(s.amplitudes(), &[c(0.0, 0.0), c(0.0, -1.0)], 1e-15));
        assert!((s.exact_probabilities()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cp_phases_only_11() {
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[3] = c(1.0, 0.0);
        let mut s = StateVector::from_amplitudes(2, amps).unwrap();
        let beta = 0.7;
        s.apply_gate(&Gate::Cp {
            control: 0,
            target: 1,
            beta,
        })
        .unwrap();
        assert!((s.amplitudes()[3] - Complex64::from_polar(1.0, beta)).norm() < 1e-15);
        assert_eq!(s.exact_probabilities()[3], 1.0);
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        // X on qubit 0 of |00> via RX(pi) gives |10>, index 2.
        let mut s = StateVector::new_zero_state(2).unwrap();
        s.apply_gate(&Gate::Rx {
            target: 0,
            theta: PI,
        })
        .unwrap();
        let p = s.exact_probabilities();
        assert!((p[2] - 1.0).abs() < 1e-15);
        assert_eq!(s.marginal_one_probs(), vec![1.0, 0.0]);
        let record = s.sample(10, 3).unwrap();
        assert_eq!(record.count("10"), 10);
    }

    #[test]
    fn probabilities_and_marginals() {
        let h = FRAC_1_SQRT_2;
        let plus = StateVector::from_amplitudes(1, vec![c(h, 0.0), c(h, 0.0)]).unwrap();
        let p = plus.exact_probabilities();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);

        let mut amps = vec![c(0.0, 0.0); 4];
        amps[2] = c(1.0, 0.0);
        let ket10 = StateVector::from_amplitudes(2, amps).unwrap();
        assert_eq!(ket10.exact_probabilities(), vec![0.0, 0.0, 1.0, 0.0]);

        let mut amps = vec![c(0.0, 0.0); 4];
        amps[3] = c(1.0, 0.0);
        let ket11 = StateVector::from_amplitudes(2, amps).unwrap();
        assert_eq!(ket11.marginal_one_probs(), vec![1.0, 1.0]);

        let bell =
            StateVector::from_amplitudes(2, vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
                .unwrap();
        for m in bell.marginal_one_probs() {
            assert!((m - 0.5).abs() < 1e-15);
        }

        let uniform = StateVector::from_amplitudes(2, vec![c(0.5, 0.0); 4]).unwrap();
        assert_eq!(uniform.marginal_one_probs(), vec![0.5, 0.5]);
    }

    #[test]
    fn circuit_identities() {
        let mut s = StateVector::new_zero_state(1).unwrap();
        s.apply_circuit(&Circuit::new(1)).unwrap();
        assert_eq!(s, StateVector::new_zero_state(1).unwrap());

        let mut circuit = Circuit::new(1);
        circuit.push(Gate::H { target: 0 }).unwrap();
        circuit.push(Gate::H { target: 0 }).unwrap();
        s.apply_circuit(&circuit).unwrap();
        assert!(close(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)], 1e-12));
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut s = StateVector::new_zero_state(2).unwrap();
        assert!(matches!(
            s.apply_gate(&Gate::H { target: 2 }),
            Err(Error::QubitIndex {
                qubit: 2,
                num_qubits: 2
            })
        ));
        assert!(matches!(
            s.apply_gate(&Gate::Cp {
                control: 1,
                target: 1,
                beta: 0.1
            }),
            Err(Error::RepeatedQubit(1))
        ));
        let mut circuit = Circuit::new(2);
        assert!(circuit
            .push(Gate::Rx {
                target: 5,
                theta: 0.0
            })
            .is_err());
        assert!(s.apply_circuit(&Circuit::new(3)).is_err());
    }

    #[test]
    fn gate_matrices_unitary() {
        let gates = [
            Gate::H { target: 0 },
            Gate::Rx {
                target: 0,
                theta: 1.234,
            },
            Gate::Cp {
                control: 0,
                target: 1,
                beta: -2.5,
            },
        ];
        for g in gates {
            let m = g.matrix();
            let d = if m.len() == 4 { 2 } else { 4 };
            for i in 0..d {
                for j in 0..d {
                    let dot: Complex64 = (0..d).map(|k| m[k * d + i].conj() * m[k * d + j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - c(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sampling_deterministic_state() {
        let s = StateVector::new_zero_state(1).unwrap();
        let r = s.sample(1000, 99).unwrap();
        assert_eq!(r.count("0"), 1000);
        assert_eq!(r.counts.len(), 1);
        assert!(s.sample(0, 1).is_err());
    }

    #[test]
    fn sampling_fair_coin_and_determinism() {
        let mut s = StateVector::new_zero_state(1).unwrap();
        s.apply_gate(&Gate::H { target: 0 }).unwrap();
        let shots = 100_000;
        let r = s.sample(shots, 2024).unwrap();
        assert_eq!(r.counts.values().sum::<u64>(), shots);
        let freq = r.count("1") as f64 / shots as f64;
        assert!((freq - 0.5).abs() <= 5.0 * (0.25 / shots as f64).sqrt());
        assert_eq!(r, s.sample(shots, 2024).unwrap());
        assert_ne!(r, s.sample(shots, 2025).unwrap());
    }

    #[test]
    fn circuit_json_format() {
        let mut circuit = Circuit::new(2);
        circuit
            .push(Gate::H { target: 0 })
            .unwrap()
            .push(Gate::Rx {
                target: 1,
                theta: 0.5,
            })
            .unwrap()
            .push(Gate::Cp {
                control: 0,
                target: 1,
                beta: 0.25,
            })
            .unwrap();
        let text = circuit.to_json();
        assert_eq!(
            text,
            r#"{"n":2,"gates":[{"kind":"H","params":[],"targets":[0]},{"kind":"RX","params":[0.5],"targets":[1]},{"kind":"CP","params":[0.25],"targets":[0,1]}]}"#
        );
        assert_eq!(Circuit::from_json(&text).unwrap(), circuit);
        assert!(
            Circuit::from_json(r#"{"n":1,"gates":[{"kind":"H","params":[],"targets":[3]}]}"#)
                .is_err()
        );
        assert!(
            Circuit::from_json(r#"{"n":1,"gates":[{"kind":"CP","params":[],"targets":[0]}]}"#)
                .is_err()
        );
    }
}
