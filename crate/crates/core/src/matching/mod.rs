//! Bipartite matching: maximum matchings, allowed edges, matching-covered and
//! brace tests, tight-set certificates and alternating-cycle reachability.

mod cycles;
mod hopcroft_karp;
mod structure;

pub use cycles::{alternating_cycles, reachable_red_counts, AlternatingCycle, DEFAULT_CYCLE_CAP};
pub use hopcroft_karp::{has_perfect_matching, max_matching, perfect_matching};
pub use structure::{
    allowed_edge_ids, allowed_edges, find_tight_set, is_brace, is_matching_covered, TightSetCertificate,
    EXHAUSTIVE_TIGHT_SET_LIMIT,
};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColoredBipartiteGraph, Edge};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchingError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("graph is a brace: no nontrivial tight set")]
    IsBrace,
    #[error("graph is not matching-covered")]
    NotMatchingCovered,
    #[error("tight-set search unsupported for n = {0}")]
    UnsupportedSize(usize),
    #[error("enumeration cap exceeded after {} cycles", partial.len())]
    CapExceeded { partial: Vec<AlternatingCycle> },
    #[error("base matching is not a perfect matching of the graph")]
    BadBaseMatching,
}

/// A matching recorded by edge id, so parallel edges stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    /// Matched column per row.
    pub assignment: Vec<Option<usize>>,
    /// Edge id used per row.
    pub edge_ids: Vec<Option<usize>>,
    pub red_count: usize,
}

impl Matching {
    /// Builds a matching from edge ids of `g`; `None` if two edges share a vertex.
    pub fn from_edge_ids(g: &ColoredBipartiteGraph, ids: impl IntoIterator<Item = usize>) -> Option<Self> {
        let n = g.n();
        let mut assignment = vec![None; n];
        let mut edge_ids = vec![None; n];
        let mut col_used = vec![false; n];
        let mut red_count = 0;
        for id in ids {
            let e = g.edge(id);
            if assignment[e.row].is_some() || col_used[e.col] {
                return None;
            }
            assignment[e.row] = Some(e.col);
            edge_ids[e.row] = Some(id);
            col_used[e.col] = true;
            red_count += e.color.bit();
        }
        Some(Self { assignment, edge_ids, red_count })
    }

    pub fn size(&self) -> usize {
        self.edge_ids.iter().flatten().count()
    }

    pub fn is_perfect(&self) -> bool {
        self.edge_ids.iter().all(Option::is_some)
    }

    /// Matched edges in row order.
    pub fn edges(&self, g: &ColoredBipartiteGraph) -> Vec<Edge> {
        self.edge_ids.iter().flatten().map(|&id| g.edge(id)).collect()
    }

    /// Checks every invariant against the host graph.
    pub fn is_valid_in(&self, g: &ColoredBipartiteGraph) -> bool {
        if self.assignment.len() != g.n() || self.edge_ids.len() != g.n() {
            return false;
        }
        let mut col_used = vec![false; g.n()];
        let mut red = 0;
        for (row, (&col, &id)) in self.assignment.iter().zip(&self.edge_ids).enumerate() {
            match (col, id) {
                (None, None) => {}
                (Some(c), Some(id)) => {
                    if id >= g.edge_count() || col_used[c] {
                        return false;
                    }
                    let e = g.edge(id);
                    if e.row != row || e.col != c {
                        return false;
                    }
                    col_used[c] = true;
                    red += e.color.bit();
                }
                _ => return false,
            }
        }
        red == self.red_count
    }

    /// Permutation form of a perfect matching.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        self.assignment.iter().copied().collect()
    }
}

/// Row-indexed adjacency of `(col, edge id)` pairs, parallel edges included.
pub(crate) fn edge_adjacency(g: &ColoredBipartiteGraph) -> Vec<Vec<(usize, usize)>> {
    (0..g.n()).map(|i| g.row_edge_ids(i).map(|id| (g.edge(id).col, id)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn matching_from_ids() {
        let g = ColoredBipartiteGraph::simple(
            2,
            vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
        )
        .unwrap();
        let m = Matching::from_edge_ids(&g, [0, 3]).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.red_count, 1);
        assert_eq!(m.permutation(), Some(vec![0, 1]));
        assert!(m.is_valid_in(&g));
        assert!(Matching::from_edge_ids(&g, [0, 2]).is_none());
    }
}
