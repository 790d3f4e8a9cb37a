use std::fmt::Write as _;

use qrank::{IterationRecord, NormMode};
use serde::Serialize;

/// Outcome of a single solver run, ranks already normalized to sum 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutcome {
    pub method: &'static str,
    pub norm: NormMode,
    pub ranks: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub residuals: Vec<f64>,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub trace: Vec<IterationRecord>,
}

#[derive(Serialize)]
struct Comparison<'a> {
    runs: &'a [RunOutcome],
    kendall_tau: Option<f64>,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    method: &'a str,
    iterations: &'a [IterationRecord],
}

/// Kendall's tau-b between two score vectors; `None` when either is constant.
pub fn kendall_tau_b(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len());
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut ties_a, mut ties_b, mut pairs) = (0i64, 0i64, 0i64);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            pairs += 1;
            let da = (a[i] - a[j]).partial_cmp(&0.0)? as i64;
            let db = (b[i] - b[j]).partial_cmp(&0.0)? as i64;
            if da == 0 {
                ties_a += 1;
            }
            if db == 0 {
                ties_b += 1;
            }
            match da * db {
                1 => concordant += 1,
                -1 => discordant += 1,
                _ => {}
            }
        }
    }
    let denom = (((pairs - ties_a) * (pairs - ties_b)) as f64).sqrt();
    (denom > 0.0).then(|| (concordant - discordant) as f64 / denom)
}

/// 1-based place of each node, ties sharing the best place.
pub fn places(ranks: &[f64]) -> Vec<usize> {
    ranks
        .iter()
        .map(|r| 1 + ranks.iter().filter(|&&o| o > *r).count())
        .collect()
}

pub fn json(runs: &[RunOutcome]) -> String {
    let mut out = match runs {
        [single] => serde_json::to_string(single),
        _ => serde_json::to_string(&Comparison {
            runs,
            kendall_tau: kendall_tau_b(&runs[0].ranks, &runs[1].ranks),
        }),
    }
    .expect("report serialization");
    out.push('\n');
    out
}

pub fn trace_json(runs: &[RunOutcome]) -> String {
    let traces: Vec<TraceJson> = runs
        .iter()
        .map(|r| TraceJson {
            method: r.method,
            iterations: &r.trace,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&traces).expect("trace serialization");
    out.push('\n');
    out
}

pub fn csv(runs: &[RunOutcome]) -> String {
    let mut out = String::from("node");
    for run in runs {
        let _ = write!(out, ",{}", run.method);
    }
    out.push('\n');
    for node in 0..runs[0].ranks.len() {
        let _ = write!(out, "{node}");
        for run in runs {
            let _ = write!(out, ",{}", run.ranks[node]);
        }
        out.push('\n');
    }
    out
}

pub fn table(runs: &[RunOutcome]) -> String {
    let mut out = String::new();
    for run in runs {
        let last = run.residuals.last().copied().unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{:<9} norm={} iterations={} converged={} final_residual={:.3e}{}",
            run.method,
            run.norm,
            run.iterations,
            run.converged,
            last,
            run.seed.map(|s| format!(" seed={s}")).unwrap_or_default(),
        );
    }
    out.push('\n');

    let _ = write!(out, "{:>4}", "node");
    for run in runs {
        let _ = write!(out, "  {:>9}  {:>5}", run.method, "place");
    }
    out.push('\n');
    let all_places: Vec<Vec<usize>> = runs.iter().map(|r| places(&r.ranks)).collect();
    for node in 0..runs[0].ranks.len() {
        let _ = write!(out, "{node:>4}");
        for (run, place) in runs.iter().zip(&all_places) {
            let _ = write!(out, "  {:>9.6}  {:>5}", run.ranks[node], place[node]);
        }
        out.push('\n');
    }

    if let [a, b] = runs {
        out.push('\n');
        match kendall_tau_b(&a.ranks, &b.ranks) {
            Some(tau) => {
                let _ = writeln!(out, "kendall tau-b: {tau:.4}");
            }
            None => out.push_str("kendall tau-b: undefined (constant ranking)\n"),
        }
    }
    out
}
