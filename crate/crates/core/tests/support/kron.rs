//! Dense Kronecker-product construction of full-register gate operators.
//!
//! Gate matrices are written out here independently of the simulator.
//! Qubit 0 is the leftmost Kronecker factor.

#![allow(dead_code)]

use num_complex::Complex64;
use qrank::Gate;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| c(f64::from(u8::from(i == j)), 0.0))
                .collect()
        })
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let (ca, cb) = (a[0].len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn kron_all(factors: &[Matrix]) -> Matrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

fn hadamard() -> Matrix {
    let h = 0.5f64.sqrt();
    vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]]
}

fn rx(theta: f64) -> Matrix {
    let co = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    vec![vec![c(co, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(co, 0.0)]]
}

fn proj_one() -> Matrix {
    vec![
        vec![c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0)],
    ]
}

/// The `2^n x 2^n` operator of `gate` on an `n`-qubit register.
pub fn full_operator(gate: &Gate, n: usize) -> Matrix {
    match *gate {
        Gate::H { target } | Gate::Rx { target, .. } => {
            let u = match *gate {
                Gate::H { .. } => hadamard(),
                Gate::Rx { theta, .. } => rx(theta),
                Gate::Cp { .. } => unreachable!(),
            };
            let factors: Vec<Matrix> = (0..n)
                .map(|q| if q == target { u.clone() } else { identity(2) })
                .collect();
            kron_all(&factors)
        }
        Gate::Cp {
            control,
            target,
            beta,
        } => {
            // I + (e^{i beta} - 1) |1><1|_control (x) |1><1|_target
            let projector: Vec<Matrix> = (0..n)
                .map(|q| {
                    if q == control || q == target {
                        proj_one()
                    } else {
                        identity(2)
                    }
                })
                .collect();
            let p = kron_all(&projector);
            let phase = Complex64::from_polar(1.0, beta) - c(1.0, 0.0);
            let mut out = identity(1 << n);
            for (row, prow) in out.iter_mut().zip(&p) {
                for (v, pv) in row.iter_mut().zip(prow) {
                    *v += phase * pv;
                }
            }
            out
        }
    }
}

pub fn mat_vec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
