use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::hopcroft_karp::{hopcroft_karp, MatchState};
use super::{edge_adjacency, MatchingError};
use crate::graph::ColoredBipartiteGraph;

/// Largest `n` for which the exhaustive tight-set search is attempted.
pub const EXHAUSTIVE_TIGHT_SET_LIMIT: usize = 14;

/// Shore of a nontrivial tight cut: rows `a1`, columns `b1` with
/// `N(b1) ⊆ a1` and `|a1| = |b1| + 1`. Every perfect matching uses exactly
/// one edge leaving the shore, from `a1` to the columns outside `b1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TightSetCertificate {
    pub a1: Vec<usize>,
    pub b1: Vec<usize>,
}

impl TightSetCertificate {
    /// Checks the certificate invariants against `g`.
    pub fn verify(&self, g: &ColoredBipartiteGraph) -> bool {
        let n = g.n();
        let sorted_in_range = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x < n);
        if self.b1.is_empty() || self.a1.len() != self.b1.len() + 1 || self.a1.len() >= n {
            return false;
        }
        if !sorted_in_range(&self.a1) || !sorted_in_range(&self.b1) {
            return false;
        }
        let mut in_a1 = vec![false; n];
        for &r in &self.a1 {
            in_a1[r] = true;
        }
        let mut in_b1 = vec![false; n];
        for &c in &self.b1 {
            in_b1[c] = true;
        }
        g.edges().iter().all(|e| !in_b1[e.col] || in_a1[e.row])
    }
}

/// Ids of the edges lying in at least one perfect matching.
///
/// Fix a perfect matching `M`; a non-matching edge `(a, b)` is allowed iff
/// `a` and the `M`-mate of `b` share a strongly connected component of the
/// row digraph with arcs `a → mate(b)`.
pub fn allowed_edge_ids(g: &ColoredBipartiteGraph) -> Result<Vec<usize>, MatchingError> {
    let n = g.n();
    let adj = edge_adjacency(g);
    let st = hopcroft_karp(&adj);
    if st.size() != n {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut dg = DiGraph::<(), ()>::with_capacity(n, g.edge_count());
    let nodes: Vec<_> = (0..n).map(|_| dg.add_node(())).collect();
    for (a, row) in adj.iter().enumerate() {
        for &(b, id) in row {
            if id != st.row_edge[a] {
                dg.add_edge(nodes[a], nodes[st.col_row[b]], ());
            }
        }
    }
    let mut comp = vec![0; n];
    for (k, scc) in tarjan_scc(&dg).into_iter().enumerate() {
        for v in scc {
            comp[v.index()] = k;
        }
    }
    Ok(g.edges()
        .iter()
        .enumerate()
        .filter(|&(id, e)| id == st.row_edge[e.row] || comp[e.row] == comp[st.col_row[e.col]])
        .map(|(id, _)| id)
        .collect())
}

/// Subgraph of edges contained in some perfect matching.
pub fn allowed_edges(g: &ColoredBipartiteGraph) -> Result<ColoredBipartiteGraph, MatchingError> {
    Ok(g.with_edge_ids(allowed_edge_ids(g)?))
}

/// Connected, has a perfect matching, and every edge lies in one.
pub fn is_matching_covered(g: &ColoredBipartiteGraph) -> bool {
    g.n() >= 1 && g.is_connected() && allowed_edge_ids(g).is_ok_and(|ids| ids.len() == g.edge_count())
}

/// Matching-covered and 2-extendable: for every two disjoint edges, the graph
/// minus their four endpoints still has a perfect matching. Parallel edges
/// are treated through their cells.
pub fn is_brace(g: &ColoredBipartiteGraph) -> bool {
    is_matching_covered(g) && pair_failures(g, true).is_empty()
}

/// A failed pair extension and the rows reached by the failed augmenting search.
struct PairFailure {
    reached_rows: Vec<usize>,
}

fn distinct_cells(g: &ColoredBipartiteGraph) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.row, e.col)).collect();
    cells.dedup();
    cells
}

/// Removes row `a` and column `b` from the matching. Returns the freed row
/// that still needs a partner, if any.
fn remove_pair(st: &mut MatchState, a: usize, b: usize) -> Option<usize> {
    if st.mate_of_row(a) == Some(b) {
        st.unmatch_row(a);
        return None;
    }
    let r = st.mate_of_col(b);
    st.unmatch_row(a);
    if let Some(r) = r {
        st.unmatch_row(r);
    }
    r
}

/// Pair-extension scan. Reuses a perfect matching of `G - e1` for every
/// partner `e2`, so each pair costs one augmenting search.
fn pair_failures(g: &ColoredBipartiteGraph, first_only: bool) -> Vec<PairFailure> {
    let n = g.n();
    let adj = edge_adjacency(g);
    let base = hopcroft_karp(&adj);
    let mut out = Vec::new();
    if base.size() != n {
        return out;
    }
    let cells = distinct_cells(g);
    let mut row_dead = vec![false; n];
    let mut col_dead = vec![false; n];
    for (k, &(a1, b1)) in cells.iter().enumerate() {
        let mut st1 = base.clone();
        row_dead[a1] = true;
        col_dead[b1] = true;
        let ok1 = match remove_pair(&mut st1, a1, b1) {
            None => true,
            Some(r) => st1.augment_from(&adj, r, &row_dead, &col_dead).is_ok(),
        };
        if ok1 {
            for &(a2, b2) in &cells[k + 1..] {
                if a2 == a1 || b2 == b1 {
                    continue;
                }
                let mut st2 = st1.clone();
                row_dead[a2] = true;
                col_dead[b2] = true;
                if let Some(r) = remove_pair(&mut st2, a2, b2) {
                    if let Err(reached_rows) = st2.augment_from(&adj, r, &row_dead, &col_dead) {
                        out.push(PairFailure { reached_rows });
                    }
                }
                row_dead[a2] = false;
                col_dead[b2] = false;
                if first_only && !out.is_empty() {
                    return out;
                }
            }
        }
        row_dead[a1] = false;
        col_dead[b1] = false;
    }
    out
}

/// Turns a failed-extension row set `R` into a certificate. When `R` misses
/// two rows and two columns of `G` and has deficiency one in what is left,
/// matching-coveredness forces `|N(R)| = |R| + 1`; the complement of
/// `R ∪ N(R)` is then the shore `(A1, B1)`.
fn lift(g: &ColoredBipartiteGraph, reached_rows: &[usize]) -> Option<TightSetCertificate> {
    let n = g.n();
    let mut in_r = vec![false; n];
    for &r in reached_rows {
        in_r[r] = true;
    }
    let mut in_nr = vec![false; n];
    for e in g.edges() {
        if in_r[e.row] {
            in_nr[e.col] = true;
        }
    }
    let cert =
        TightSetCertificate { a1: (0..n).filter(|&r| !in_r[r]).collect(), b1: (0..n).filter(|&c| !in_nr[c]).collect() };
    cert.verify(g).then_some(cert)
}

fn exhaustive_tight_set(g: &ColoredBipartiteGraph) -> Option<TightSetCertificate> {
    let n = g.n();
    let col_adj = g.col_neighbors();
    let mut best: Option<TightSetCertificate> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size + 2 > n {
            continue;
        }
        let mut rows = 0u32;
        for c in (0..n).filter(|&c| mask >> c & 1 == 1) {
            for &r in &col_adj[c] {
                rows |= 1 << r;
            }
        }
        if rows.count_ones() as usize == size + 1 {
            let cert = TightSetCertificate {
                a1: (0..n).filter(|&r| rows >> r & 1 == 1).collect(),
                b1: (0..n).filter(|&c| mask >> c & 1 == 1).collect(),
            };
            if best.as_ref().is_none_or(|b| cert_key(&cert) < cert_key(b)) {
                best = Some(cert);
            }
        }
    }
    best
}

fn cert_key(c: &TightSetCertificate) -> (usize, &[usize], &[usize]) {
    (c.b1.len(), &c.b1, &c.a1)
}

/// Finds a nontrivial tight set of a matching-covered non-brace.
///
/// Every failed pair extension is lifted to a candidate; the candidate with
/// the fewest columns (then lexicographically least) is returned. If no lift
/// verifies, an exhaustive subset search runs for `n <= 14`.
pub fn find_tight_set(g: &ColoredBipartiteGraph) -> Result<TightSetCertificate, MatchingError> {
    if !is_matching_covered(g) {
        return Err(MatchingError::NotMatchingCovered);
    }
    if g.n() < 3 {
        return Err(MatchingError::IsBrace);
    }
    let failures = pair_failures(g, false);
    if failures.is_empty() {
        return Err(MatchingError::IsBrace);
    }
    let lifted = failures.iter().filter_map(|f| lift(g, &f.reached_rows)).min_by(|x, y| cert_key(x).cmp(&cert_key(y)));
    if let Some(cert) = lifted {
        return Ok(cert);
    }
    if g.n() > EXHAUSTIVE_TIGHT_SET_LIMIT {
        return Err(MatchingError::UnsupportedSize(g.n()));
    }
    exhaustive_tight_set(g).ok_or(MatchingError::IsBrace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Edge, Family, FamilySpec};

    fn fam(f: Family) -> ColoredBipartiteGraph {
        gen_family(&FamilySpec::new(f), 0).unwrap()
    }

    pub(crate) fn c6() -> ColoredBipartiteGraph {
        ColoredBipartiteGraph::simple(
            3,
            vec![
                Edge::blue(0, 0),
                Edge::blue(1, 0),
                Edge::blue(1, 1),
                Edge::blue(2, 1),
                Edge::blue(2, 2),
                Edge::blue(0, 2),
            ],
        )
        .unwrap()
    }

    fn path3() -> ColoredBipartiteGraph {
        ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(0, 1), Edge::blue(1, 1)]).unwrap()
    }

    #[test]
    fn allowed_examples() {
        let k33 = fam(Family::Knn { n: 3 });
        assert_eq!(allowed_edges(&k33).unwrap(), k33);
        assert_eq!(allowed_edges(&path3()).unwrap().edges(), &[Edge::blue(0, 0), Edge::blue(1, 1)]);
        let bc4 = fam(Family::BandCyclic { m: 4 });
        assert_eq!(allowed_edges(&bc4).unwrap(), bc4);
        let no_pm = ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(1, 0)]).unwrap();
        assert_eq!(allowed_edges(&no_pm), Err(MatchingError::NoPerfectMatching));
    }

    #[test]
    fn matching_covered_examples() {
        assert!(is_matching_covered(&fam(Family::Knn { n: 2 })));
        assert!(!is_matching_covered(&path3()));
        let two = fam(Family::Knn { n: 2 }).disjoint_union(&fam(Family::Knn { n: 2 }));
        assert!(!is_matching_covered(&two));
    }

    #[test]
    fn brace_examples() {
        assert!(is_brace(&fam(Family::Knn { n: 3 })));
        assert!(is_brace(&fam(Family::Knn { n: 2 })));
        assert!(is_brace(&fam(Family::Knn { n: 1 })));
        assert!(!is_brace(&c6()));
        // m = 3 is K_{3,3} minus an edge
        assert!(!is_brace(&fam(Family::Biwheel { m: 3 })));
        for m in 4..9 {
            assert!(is_brace(&fam(Family::Biwheel { m })), "biwheel {m}");
        }
        for m in 3..9 {
            assert!(is_brace(&fam(Family::BandCyclic { m })), "band_cyclic {m}");
        }
        for m in 3..9 {
            assert!(!is_brace(&fam(Family::BandPath { m })), "band_path {m}");
        }
    }

    #[test]
    fn tight_set_examples() {
        let cert = find_tight_set(&c6()).unwrap();
        assert_eq!(cert, TightSetCertificate { a1: vec![0, 1], b1: vec![0] });
        assert_eq!(find_tight_set(&fam(Family::Knn { n: 3 })), Err(MatchingError::IsBrace));
        assert_eq!(find_tight_set(&fam(Family::BandCyclic { m: 6 })), Err(MatchingError::IsBrace));
        assert_eq!(find_tight_set(&path3()), Err(MatchingError::NotMatchingCovered));
    }

    #[test]
    fn lift_agrees_with_exhaustive_minimum() {
        for m in 3..10 {
            let g = fam(Family::BandPath { m });
            let ex = exhaustive_tight_set(&g).unwrap();
            let found = find_tight_set(&g).unwrap();
            assert!(found.verify(&g));
            assert_eq!(found.b1.len(), ex.b1.len());
        }
    }
}
