use std::collections::VecDeque;

use super::{edge_adjacency, Matching};
use crate::graph::ColoredBipartiteGraph;

const NIL: usize = usize::MAX;

/// Mutable matching state over a row adjacency of `(col, edge id)` pairs.
#[derive(Clone, Debug)]
pub(crate) struct MatchState {
    /// `(col, edge id)` matched at each row, `NIL` col when free.
    pub row_col: Vec<usize>,
    pub row_edge: Vec<usize>,
    pub col_row: Vec<usize>,
}

impl MatchState {
    pub fn empty(n: usize) -> Self {
        Self { row_col: vec![NIL; n], row_edge: vec![NIL; n], col_row: vec![NIL; n] }
    }

    pub fn size(&self) -> usize {
        self.row_col.iter().filter(|&&c| c != NIL).count()
    }

    pub fn mate_of_row(&self, r: usize) -> Option<usize> {
        (self.row_col[r] != NIL).then_some(self.row_col[r])
    }

    pub fn mate_of_col(&self, c: usize) -> Option<usize> {
        (self.col_row[c] != NIL).then_some(self.col_row[c])
    }

    pub fn unmatch_row(&mut self, r: usize) {
        let c = self.row_col[r];
        if c != NIL {
            self.col_row[c] = NIL;
            self.row_col[r] = NIL;
            self.row_edge[r] = NIL;
        }
    }

    pub fn set(&mut self, r: usize, c: usize, id: usize) {
        self.row_col[r] = c;
        self.row_edge[r] = id;
        self.col_row[c] = r;
    }

    pub fn to_matching(&self, g: &ColoredBipartiteGraph) -> Matching {
        let ids = self.row_edge.iter().copied().filter(|&id| id != NIL);
        Matching::from_edge_ids(g, ids).expect("matching state is consistent")
    }

    /// One BFS for an augmenting path from free row `start`, skipping dead
    /// vertices. On failure returns the rows reached by alternating paths.
    pub fn augment_from(
        &mut self,
        adj: &[Vec<(usize, usize)>],
        start: usize,
        row_dead: &[bool],
        col_dead: &[bool],
    ) -> Result<(), Vec<usize>> {
        let n = adj.len();
        let mut col_parent = vec![(NIL, NIL); n];
        let mut row_seen = vec![false; n];
        let mut reached = vec![start];
        row_seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(c, id) in &adj[u] {
                if col_dead[c] || col_parent[c].0 != NIL {
                    continue;
                }
                col_parent[c] = (u, id);
                let w = self.col_row[c];
                if w == NIL {
                    // Flip the path back to `start`.
                    let mut col = c;
                    loop {
                        let (r, eid) = col_parent[col];
                        let prev = self.row_col[r];
                        self.set(r, col, eid);
                        if r == start {
                            return Ok(());
                        }
                        col = prev;
                    }
                }
                if !row_dead[w] && !row_seen[w] {
                    row_seen[w] = true;
                    reached.push(w);
                    queue.push_back(w);
                }
            }
        }
        Err(reached)
    }
}

/// Hopcroft–Karp over the full graph, deterministic in edge order.
pub(crate) fn hopcroft_karp(adj: &[Vec<(usize, usize)>]) -> MatchState {
    let n = adj.len();
    let mut st = MatchState::empty(n);
    let mut dist = vec![0usize; n];
    loop {
        // BFS layering from free rows.
        let mut queue = VecDeque::new();
        for r in 0..n {
            if st.row_col[r] == NIL {
                dist[r] = 0;
                queue.push_back(r);
            } else {
                dist[r] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &(c, _) in &adj[u] {
                let w = st.col_row[c];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return st;
        }
        let mut next = vec![0usize; n];
        for r in 0..n {
            if st.row_col[r] == NIL {
                dfs(adj, &mut st, &mut dist, &mut next, r);
            }
        }
    }
}

fn dfs(adj: &[Vec<(usize, usize)>], st: &mut MatchState, dist: &mut [usize], next: &mut [usize], u: usize) -> bool {
    while next[u] < adj[u].len() {
        let (c, id) = adj[u][next[u]];
        next[u] += 1;
        let w = st.col_row[c];
        if w == NIL || (dist[w] == dist[u] + 1 && dfs(adj, st, dist, next, w)) {
            st.set(u, c, id);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Maximum-cardinality matching.
pub fn max_matching(g: &ColoredBipartiteGraph) -> Matching {
    hopcroft_karp(&edge_adjacency(g)).to_matching(g)
}

pub fn has_perfect_matching(g: &ColoredBipartiteGraph) -> bool {
    hopcroft_karp(&edge_adjacency(g)).size() == g.n()
}

pub fn perfect_matching(g: &ColoredBipartiteGraph) -> Option<Matching> {
    let m = max_matching(g);
    m.is_perfect().then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Edge, Family, FamilySpec};

    fn fam(f: Family) -> ColoredBipartiteGraph {
        gen_family(&FamilySpec::new(f), 0).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(max_matching(&fam(Family::Knn { n: 3 })).size(), 3);
        let star =
            ColoredBipartiteGraph::simple(3, vec![Edge::blue(0, 0), Edge::blue(0, 1), Edge::blue(0, 2)]).unwrap();
        assert_eq!(max_matching(&star).size(), 1);
        assert_eq!(max_matching(&fam(Family::BandPath { m: 5 })).size(), 5);
    }

    #[test]
    fn perfect() {
        assert!(has_perfect_matching(&fam(Family::Knn { n: 2 })));
        let g = ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(0, 1)]).unwrap();
        assert!(!has_perfect_matching(&g));
        assert!(has_perfect_matching(&fam(Family::BandCyclic { m: 6 })));
        assert!(max_matching(&fam(Family::Biwheel { m: 5 })).is_valid_in(&fam(Family::Biwheel { m: 5 })));
    }

    #[test]
    fn augment_reports_deficient_rows() {
        // rows 0,1 both only see column 0
        let g = ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(1, 0), Edge::blue(1, 1)]).unwrap();
        let adj = edge_adjacency(&g);
        let mut st = MatchState::empty(2);
        st.set(1, 0, 1);
        // kill column 1 so row 0 cannot be matched
        let err = st.augment_from(&adj, 0, &[false, false], &[false, true]).unwrap_err();
        assert_eq!(err, vec![0, 1]);
        assert!(st.augment_from(&adj, 0, &[false, false], &[false, false]).is_ok());
        assert_eq!(st.size(), 2);
    }
}
