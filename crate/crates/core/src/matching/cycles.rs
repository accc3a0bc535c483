use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Matching, MatchingError};
use crate::graph::ColoredBipartiteGraph;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Cycle alternating between base-matching edges and other edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlternatingCycle {
    /// Edge ids `base(r0), e0, base(r1), e1, …`; `e_k` joins row `r_k` to the
    /// base column of `r_{k+1}`.
    pub edges: Vec<usize>,
    /// Rows on the cycle, starting at the smallest.
    pub rows: Vec<usize>,
    /// Red non-base edges minus red base edges.
    pub displacement: i64,
}

/// Base edge id per row, and per row the `(target row, edge id)` arcs.
type RowArcs = (Vec<usize>, Vec<Vec<(usize, usize)>>);

/// Row digraph of `m0`: an arc `a → mate(b)` for every non-base edge `(a, b)`.
fn row_arcs(g: &ColoredBipartiteGraph, m0: &Matching) -> Result<RowArcs, MatchingError> {
    if !m0.is_perfect() || !m0.is_valid_in(g) {
        return Err(MatchingError::BadBaseMatching);
    }
    let n = g.n();
    let base: Vec<usize> = m0.edge_ids.iter().map(|e| e.expect("perfect")).collect();
    let mut col_row = vec![0; n];
    for (r, c) in m0.assignment.iter().enumerate() {
        col_row[c.expect("perfect")] = r;
    }
    let arcs = (0..n)
        .map(|a| g.row_edge_ids(a).filter(|&id| id != base[a]).map(|id| (col_row[g.edge(id).col], id)).collect())
        .collect();
    Ok((base, arcs))
}

/// All `m0`-alternating cycles, rooted at their smallest row, roots in
/// increasing order and arcs in edge order. Exponential; bounded by `cap`.
pub fn alternating_cycles(
    g: &ColoredBipartiteGraph,
    m0: &Matching,
    cap: usize,
) -> Result<Vec<AlternatingCycle>, MatchingError> {
    let (base, arcs) = row_arcs(g, m0)?;
    let n = g.n();
    let red = |id: usize| g.edge(id).color.bit() as i64;
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        // Iterative DFS over simple paths from `s` through rows > s.
        let mut rows = vec![s];
        let mut via: Vec<usize> = Vec::new();
        let mut next = vec![0usize];
        on_path[s] = true;
        while let Some(&u) = rows.last() {
            let depth = rows.len() - 1;
            if next[depth] == arcs[u].len() {
                on_path[u] = false;
                rows.pop();
                next.pop();
                via.pop();
                continue;
            }
            let (w, id) = arcs[u][next[depth]];
            next[depth] += 1;
            if w == s {
                let mut edges = Vec::with_capacity(2 * rows.len());
                let mut displacement = 0;
                for (k, &r) in rows.iter().enumerate() {
                    let e = if k + 1 < rows.len() { via[k] } else { id };
                    edges.push(base[r]);
                    edges.push(e);
                    displacement += red(e) - red(base[r]);
                }
                out.push(AlternatingCycle { edges, rows: rows.clone(), displacement });
                if out.len() > cap {
                    out.truncate(cap);
                    return Err(MatchingError::CapExceeded { partial: out });
                }
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                rows.push(w);
                via.push(id);
                next.push(0);
            }
        }
    }
    Ok(out)
}

/// Red counts `|M0 ∩ R| + Σ Δ(C)` over vertex-disjoint cycle collections.
///
/// Collections are explored by deciding the smallest undecided row: it is
/// either left alone or covered by a cycle through it, so results are
/// memoised on the set of decided rows.
pub fn reachable_red_counts(
    g: &ColoredBipartiteGraph,
    m0: &Matching,
    cap: usize,
) -> Result<BTreeSet<usize>, MatchingError> {
    let n = g.n();
    if n > 128 {
        return Err(MatchingError::UnsupportedSize(n));
    }
    let cycles = alternating_cycles(g, m0, cap)?;
    let masks: Vec<u128> = cycles.iter().map(|c| c.rows.iter().fold(0u128, |m, &r| m | 1 << r)).collect();
    let mut by_row = vec![Vec::new(); n];
    for (k, c) in cycles.iter().enumerate() {
        for &r in &c.rows {
            by_row[r].push(k);
        }
    }
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut memo: HashMap<u128, BTreeSet<i64>> = HashMap::new();
    let shifts = collect(full, 0, &cycles, &masks, &by_row, &mut memo);
    let base = m0.red_count as i64;
    Ok(shifts.iter().map(|&s| (base + s) as usize).collect())
}

fn collect(
    full: u128,
    decided: u128,
    cycles: &[AlternatingCycle],
    masks: &[u128],
    by_row: &[Vec<usize>],
    memo: &mut HashMap<u128, BTreeSet<i64>>,
) -> BTreeSet<i64> {
    if decided == full {
        return BTreeSet::from([0]);
    }
    if let Some(v) = memo.get(&decided) {
        return v.clone();
    }
    let r = (!decided).trailing_zeros() as usize;
    let mut out = collect(full, decided | 1 << r, cycles, masks, by_row, memo);
    for &k in &by_row[r] {
        if masks[k] & decided == 0 {
            let d = cycles[k].displacement;
            out.extend(collect(full, decided | masks[k], cycles, masks, by_row, memo).iter().map(|s| s + d));
        }
    }
    memo.insert(decided, out.clone());
    out
}
