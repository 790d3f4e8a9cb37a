//! Graph ingestion, dense adjacency storage, and transition-matrix construction.
//!
//! The adjacency matrix uses the transposed PageRank convention: entry
//! `(i, j)` is 1 when node `j` links to node `i`. Column `j` therefore lists
//! the out-links of node `j` and row `i` its in-links. An edge line `src dst`
//! sets `A[dst][src]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary, square link structure of a directed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct AdjacencyJson {
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl AdjacencyMatrix {
    /// An `n`-node graph with no links.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        Ok(Self {
            n,
            entries: vec![0; n * n],
        })
    }

    /// Builds from printed rows, `rows[i][j] = 1` meaning `j -> i`.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Self::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => a.entries[i * n + j] = 1,
                    other => {
                        return Err(Error::InvalidMatrix(format!(
                            "entry ({i}, {j}) is {other}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.n + col]
    }

    /// Records a link `src -> dst`. Repeated links are idempotent.
    pub fn add_link(&mut self, src: usize, dst: usize) -> Result<()> {
        for idx in [src, dst] {
            if idx >= self.n {
                return Err(Error::InvalidMatrix(format!(
                    "node {idx} out of range for {} nodes",
                    self.n
                )));
            }
        }
        self.entries[dst * self.n + src] = 1;
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    /// Links as `(src, dst)` pairs, ordered by destination then source.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n)
            .filter(|&k| self.entries[k] == 1)
            .map(move |k| (k % n, k / n))
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v == 1).count()
    }

    /// Maximum row sum.
    pub fn inf_norm(&self) -> f64 {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(|&v| u32::from(v)).sum::<u32>())
            .max()
            .unwrap_or(0) as f64
    }

    /// Maximum column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| u32::from(self.get(i, j))).sum::<u32>())
            .max()
            .unwrap_or(0) as f64
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { n, entries }
    }

    /// Relabels node `k` as `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.entries[i * n + j];
            }
        }
        Ok(Self { n, entries })
    }

    /// Edge-list text with an explicit `nodes N` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("nodes {}\n", self.n);
        for (src, dst) in self.links() {
            out.push_str(&format!("{src} {dst}\n"));
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: AdjacencyJson = serde_json::from_str(text)?;
        let a = Self::from_rows(&parsed.rows)?;
        if a.n != parsed.n {
            return Err(Error::InvalidMatrix(format!(
                "declared n = {} but {} rows given",
                parsed.n, a.n
            )));
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AdjacencyJson {
            n: self.n,
            rows: self.rows(),
        })
        .expect("adjacency json serialization")
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidConfig(format!(
                "{perm:?} is not a permutation"
            )));
        }
    }
    Ok(())
}

/// Parses the edge-list text format.
///
/// Each non-blank line is either a `#` comment, a `nodes N` header, or an
/// edge `src dst` with 0-based indices. Without a header the node count is
/// one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<AdjacencyMatrix> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };

        if tokens[0] == "nodes" {
            if tokens.len() != 2 {
                return Err(parse_err("expected `nodes N`".into()));
            }
            if declared.is_some() {
                return Err(parse_err("duplicate `nodes` header".into()));
            }
            let n: usize = tokens[1]
                .parse()
                .map_err(|_| parse_err(format!("invalid node count `{}`", tokens[1])))?;
            if n == 0 {
                return Err(parse_err("node count must be positive".into()));
            }
            declared = Some(n);
            continue;
        }

        if tokens.len() != 2 {
            return Err(parse_err(format!(
                "expected `src dst`, found {} fields",
                tokens.len()
            )));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(format!("invalid node index `{tok}`")))?;
            if v < 0 {
                return Err(parse_err(format!("negative node index {v}")));
            }
            *slot =
                usize::try_from(v).map_err(|_| parse_err(format!("node index {v} too large")))?;
        }
        edges.push((line_no, ends[0], ends[1]));
    }

    let inferred = edges.iter().map(|&(_, s, d)| s.max(d) + 1).max();
    let n = match (declared, inferred) {
        (None, None) => return Err(Error::NoNodes),
        (Some(n), _) => n,
        (None, Some(n)) => n,
    };

    let mut a = AdjacencyMatrix::empty(n)?;
    for (line, src, dst) in edges {
        if src >= n || dst >= n {
            return Err(Error::Parse {
                line,
                message: format!("edge {src} -> {dst} exceeds declared {n} nodes"),
            });
        }
        a.add_link(src, dst)?;
    }
    Ok(a)
}

/// How the adjacency matrix is scaled into a transition matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    /// Divide by the maximum row sum.
    Inf,
    /// Divide by the maximum column sum.
    One,
    /// Normalize each column to sum 1; empty columns become uniform.
    #[serde(rename = "column")]
    ColumnStochastic,
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormMode::Inf => "inf",
            NormMode::One => "one",
            NormMode::ColumnStochastic => "column",
        })
    }
}

impl FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(NormMode::Inf),
            "one" => Ok(NormMode::One),
            "column" => Ok(NormMode::ColumnStochastic),
            other => Err(Error::InvalidConfig(format!(
                "unknown norm mode `{other}` (expected inf, one or column)"
            ))),
        }
    }
}

/// Dense row-major transition matrix `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<f64>,
    mode: NormMode,
    scale: Option<f64>,
}

impl TransitionMatrix {
    pub fn build(a: &AdjacencyMatrix, mode: NormMode) -> Result<Self> {
        let n = a.n();
        let (entries, scale) = match mode {
            NormMode::Inf | NormMode::One => {
                let norm = if mode == NormMode::Inf {
                    a.inf_norm()
                } else {
                    a.one_norm()
                };
                if norm == 0.0 {
                    return Err(Error::NoEdges);
                }
                let entries = a.entries.iter().map(|&v| f64::from(v) / norm).collect();
                (entries, Some(norm))
            }
            NormMode::ColumnStochastic => {
                let mut entries = vec![0.0; n * n];
                for j in 0..n {
                    let out_degree: u32 = (0..n).map(|i| u32::from(a.get(i, j))).sum();
                    for i in 0..n {
                        entries[i * n + j] = if out_degree == 0 {
                            1.0 / n as f64
                        } else {
                            f64::from(a.get(i, j)) / f64::from(out_degree)
                        };
                    }
                }
                (entries, None)
            }
        };
        Ok(Self {
            n,
            entries,
            mode,
            scale,
        })
    }

    /// Wraps arbitrary nonnegative entries. Used for hand-built test matrices.
    pub fn from_dense(n: usize, entries: Vec<f64>, mode: NormMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some((k, &v)) = entries
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) = {v} is not a nonnegative real",
                k / n,
                k % n
            )));
        }
        Ok(Self {
            n,
            entries,
            mode,
            scale: None,
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_dense(n, vec![0.0; n * n], NormMode::Inf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> NormMode {
        self.mode
    }

    /// The scalar divisor for the `Inf` and `One` modes.
    pub fn scale(&self) -> Option<f64> {
        self.scale
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_row_sum(&self) -> f64 {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `P x`, each component summed left to right over columns.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .entries
            .chunks(self.n)
            .map(|row| row.iter().zip(x).fold(0.0, |acc, (p, v)| acc + p * v))
            .collect())
    }

    /// Relabels node `k` as `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.entries[i * n + j];
            }
        }
        Ok(Self {
            n,
            entries,
            mode: self.mode,
            scale: self.scale,
        })
    }
}
