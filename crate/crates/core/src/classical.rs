//! Richardson PageRank: `x <- alpha * P x + (1 - alpha) / n`.
//!
//! Iteration starts from the uniform vector `1/n` and stops once the L1 norm
//! of the successive difference drops below `epsilon`. Iterates are not
//! renormalized; [`normalize_ranks`] is applied for reporting only.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_permutation, TransitionMatrix};

/// A PageRank iterate.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::NegativeComponent { index, value });
        }
        Ok(Self(values))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1_distance(&self, other: &RankVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// Component `k` moves to position `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        let mut out = vec![0.0; self.len()];
        for (k, &p) in perm.iter().enumerate() {
            out[p] = self.0[k];
        }
        Ok(Self(out))
    }
}

impl std::ops::Index<usize> for RankVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub alpha: f64,
    pub epsilon: f64,
    pub max_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 0.85,
            epsilon: 1e-6,
            max_iters: 1000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        validate_common(self.alpha, self.epsilon, self.max_iters)
    }
}

pub(crate) fn validate_common(alpha: f64, epsilon: f64, max_iters: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidConfig(format!("alpha {alpha} not in [0, 1]")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "epsilon {epsilon} must be positive"
        )));
    }
    if max_iters == 0 {
        return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
    }
    Ok(())
}

/// One row of an iteration trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub x: Vec<f64>,
    /// Measurement-derived estimate fed into the update (quantum runs only).
    pub q: Option<Vec<f64>>,
    pub residual: f64,
    /// Sampling seed used at this iteration (sampled quantum runs only).
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub iterations: usize,
    pub converged: bool,
    /// L1 change per iteration; one entry per iteration.
    pub residuals: Vec<f64>,
    /// Seconds.
    pub wall_time: f64,
    pub trace: Vec<IterationRecord>,
}

/// Drives `step` from the uniform start until the L1 change falls below
/// `epsilon` or `max_iters` is reached.
pub(crate) fn iterate<F>(
    n: usize,
    epsilon: f64,
    max_iters: usize,
    mut step: F,
) -> Result<(RankVector, SolverReport)>
where
    F: FnMut(usize, &RankVector) -> Result<(RankVector, Option<Vec<f64>>, Option<u64>)>,
{
    let start = Instant::now();
    let mut x = RankVector::uniform(n);
    let mut residuals = Vec::new();
    let mut trace = Vec::new();
    let mut converged = false;

    for iteration in 1..=max_iters {
        let (next, q, seed) = step(iteration, &x)?;
        let residual = next.l1_distance(&x);
        if !residual.is_finite() {
            return Err(Error::NonFinite { iteration });
        }
        residuals.push(residual);
        trace.push(IterationRecord {
            iteration,
            x: next.values().to_vec(),
            q,
            residual,
            seed,
        });
        x = next;
        if residual < epsilon {
            converged = true;
            break;
        }
    }

    let report = SolverReport {
        iterations: residuals.len(),
        converged,
        residuals,
        wall_time: start.elapsed().as_secs_f64(),
        trace,
    };
    Ok((x, report))
}

/// The damped affine update `alpha * P v + (1 - alpha) / n`.
pub(crate) fn damped_update(p: &TransitionMatrix, v: &[f64], alpha: f64) -> Result<Vec<f64>> {
    let n = p.n();
    let teleport = (1.0 - alpha) / n as f64;
    let pv = p.mul_vec(v)?;
    Ok(pv.into_iter().map(|s| alpha * s + teleport).collect())
}

pub fn richardson_step(p: &TransitionMatrix, x: &RankVector, alpha: f64) -> Result<RankVector> {
    let next = damped_update(p, x.values(), alpha)?;
    if next.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { iteration: 0 });
    }
    Ok(RankVector(next))
}

pub fn richardson_solve(
    p: &TransitionMatrix,
    config: &SolverConfig,
) -> Result<(RankVector, SolverReport)> {
    config.validate()?;
    iterate(p.n(), config.epsilon, config.max_iters, |iteration, x| {
        let next = damped_update(p, x.values(), config.alpha)?;
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { iteration });
        }
        Ok((RankVector(next), None, None))
    })
}

/// Classic power iteration: the damped update followed by L1 renormalization
/// of every iterate. Provided for comparison with [`richardson_solve`].
pub fn power_iteration_solve(
    p: &TransitionMatrix,
    config: &SolverConfig,
) -> Result<(RankVector, SolverReport)> {
    config.validate()?;
    iterate(p.n(), config.epsilon, config.max_iters, |iteration, x| {
        let next = damped_update(p, x.values(), config.alpha)?;
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { iteration });
        }
        Ok((normalize_ranks(&RankVector(next))?, None, None))
    })
}

/// Scales `x` to sum 1.
pub fn normalize_ranks(x: &RankVector) -> Result<RankVector> {
    let total: f64 = x.values().iter().sum();
    if total.is_nan() || total <= 0.0 || !x.values().iter().any(|&v| v > 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(RankVector(x.values().iter().map(|v| v / total).collect()))
}

/// Exact fixed point of the damped update, solving
/// `(I - alpha P) x = (1 - alpha)/n * 1` by Gaussian elimination with
/// partial pivoting.
pub fn oracle_direct_solve(p: &TransitionMatrix, alpha: f64) -> Result<RankVector> {
    let n = p.n();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| f64::from(u8::from(i == j)) - alpha * p.get(i, j))
                .collect();
            row.push((1.0 - alpha) / n as f64);
            row
        })
        .collect();

    let scale = m
        .iter()
        .flat_map(|row| row[..n].iter())
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-12 * scale.max(1.0);

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty pivot range");
        let pivot = m[pivot_row][col];
        if pivot.abs() <= tol {
            return Err(Error::NearSingular { column: col, pivot });
        }
        m.swap(col, pivot_row);
        for r in col + 1..n {
            let factor = m[r][col] / pivot;
            if factor != 0.0 {
                let (upper, lower) = m.split_at_mut(r);
                for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *dst -= factor * src;
                }
            }
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - tail) / m[i][i];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { iteration: 0 });
    }
    // Tiny negative round-off is clamped; the exact solution is nonnegative.
    Ok(RankVector(x.into_iter().map(|v| v.max(0.0)).collect()))
}
