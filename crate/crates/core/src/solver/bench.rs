use std::time::Instant;

use serde::Serialize;

use super::{solve, Decision, SolveError, SolveOptions};
use crate::graph::{gen_family, ColoredBipartiteGraph, Family, FamilySpec, GraphError};
use crate::matching::{is_brace, max_matching};

const MAX_BRACE_ATTEMPTS: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub edges: usize,
    pub t: i64,
    pub decision: Decision,
    /// Random graphs drawn before a brace came up.
    pub attempts: u64,
    pub seconds: f64,
}

/// Seeded random simple brace on `n` vertices per side: random graphs with a
/// perfect matching are drawn until one is a brace.
pub fn random_brace(n: usize, seed: u64) -> Result<(ColoredBipartiteGraph, u64), GraphError> {
    let density = if n <= 6 { 0.8 } else { 0.5 };
    for k in 0..MAX_BRACE_ATTEMPTS {
        let spec = FamilySpec::new(Family::Random { n, density, red_prob: 0.5, require_pm: true });
        let g = gen_family(&spec, seed.wrapping_mul(MAX_BRACE_ATTEMPTS).wrapping_add(k))?;
        if is_brace(&g) {
            return Ok((g, k + 1));
        }
    }
    Err(GraphError::BadParams(format!("no brace found for n = {n}")))
}

/// Wall-clock solve time per size on a random brace. The target is the red
/// count of a maximum matching, so every row is a YES instance.
pub fn bench(sizes: &[usize], seed: u64, opts: &SolveOptions) -> Result<Vec<BenchRow>, SolveError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        if n == 0 {
            return Err(GraphError::BadParams("bench size must be positive".into()).into());
        }
        let (g, attempts) = random_brace(n, seed)?;
        let t = max_matching(&g).red_count as i64;
        let start = Instant::now();
        let report = solve(&g, t, opts)?;
        let seconds = start.elapsed().as_secs_f64();
        rows.push(BenchRow { n, edges: g.edge_count(), t, decision: report.decision, attempts, seconds });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_rows() {
        let rows = bench(&[3, 4], 7, &SolveOptions::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.decision == Decision::Yes));
        assert!(bench(&[0], 7, &SolveOptions::default()).is_err());
    }
}
