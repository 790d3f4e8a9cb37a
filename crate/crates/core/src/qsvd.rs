//! Builds the rank-encoding circuit: a Hadamard and an `RX(2 pi x_j)` on every
//! qubit, followed by a ladder of controlled-phase gates on adjacent pairs.
//!
//! Node `j` maps to qubit `j`. Ladder layer `l` (1-based) uses phase
//! `beta_l = 2 asin(2^-l)`. In the default triangular layout, layer `l` acts
//! on the first `l` adjacent pairs, for `l = 1..n-1`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::statevector::{Circuit, Gate};

/// Tolerance on `||x||_2 = 1` for encoder inputs.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EncodingAngles(Vec<f64>);

impl EncodingAngles {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Ladder phases; `values()[0]` is `beta_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderAngles(Vec<f64>);

impl LadderAngles {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// `beta_layer`, 1-based.
    pub fn beta(&self, layer: usize) -> f64 {
        self.0[layer - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LadderVariant {
    /// Layer `l = 1..n-1` on the first `l` adjacent pairs.
    #[default]
    Triangular,
    /// Layers `l = 1..n`, each on every adjacent pair.
    Full,
    /// Encoding layer only.
    None,
}

impl fmt::Display for LadderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderVariant::Triangular => "triangular",
            LadderVariant::Full => "full",
            LadderVariant::None => "none",
        })
    }
}

impl FromStr for LadderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangular" => Ok(LadderVariant::Triangular),
            "full" => Ok(LadderVariant::Full),
            "none" => Ok(LadderVariant::None),
            other => Err(Error::InvalidConfig(format!(
                "unknown ladder variant `{other}`"
            ))),
        }
    }
}

/// `alpha_j = 2 pi x_j` for a nonnegative, L2-normalized `x`.
pub fn encoding_angles(x: &[f64]) -> Result<EncodingAngles> {
    if let Some((index, &value)) = x
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < 0.0)
    {
        return Err(Error::NegativeComponent { index, value });
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(EncodingAngles(x.iter().map(|v| TAU * v).collect()))
}

/// `beta_l = 2 asin(2^-l)` for `l = 1..=count`.
pub fn ladder_angles(count: usize) -> LadderAngles {
    LadderAngles(
        (1..=count)
            .map(|l| 2.0 * (0.5f64).powi(l as i32).asin())
            .collect(),
    )
}

/// Number of gates [`build_qsvd_circuit_with`] emits on `n` qubits.
pub fn gate_count(n: usize, variant: LadderVariant) -> usize {
    let ladder = match variant {
        LadderVariant::Triangular => n * n.saturating_sub(1) / 2,
        LadderVariant::Full => n * n.saturating_sub(1),
        LadderVariant::None => 0,
    };
    2 * n + ladder
}

pub fn build_qsvd_circuit(x: &[f64]) -> Result<Circuit> {
    build_qsvd_circuit_with(x, LadderVariant::Triangular)
}

pub fn build_qsvd_circuit_with(x: &[f64], variant: LadderVariant) -> Result<Circuit> {
    let n = x.len();
    if n == 0 {
        return Err(Error::NoNodes);
    }
    let alphas = encoding_angles(x)?;
    let mut circuit = Circuit::new(n);

    for q in 0..n {
        circuit.push(Gate::H { target: q })?;
    }
    for (q, &theta) in alphas.values().iter().enumerate() {
        circuit.push(Gate::Rx { target: q, theta })?;
    }

    let pairs = n.saturating_sub(1);
    // Number of adjacent pairs touched by each layer.
    let layout: Vec<usize> = match variant {
        LadderVariant::Triangular => (1..=pairs).collect(),
        LadderVariant::Full if pairs > 0 => vec![pairs; n],
        LadderVariant::Full | LadderVariant::None => Vec::new(),
    };
    let betas = ladder_angles(layout.len());
    for (&width, &beta) in layout.iter().zip(betas.values()) {
        for j in 0..width {
            circuit.push(Gate::Cp {
                control: j,
                target: j + 1,
                beta,
            })?;
        }
    }
    Ok(circuit)
}
