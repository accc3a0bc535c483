use serde::Serialize;

use super::ColoredBipartiteGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Finding {
    IndexOutOfRange {
        row: usize,
        col: usize,
    },
    DuplicateEdge {
        row: usize,
        col: usize,
    },
    /// A multigraph cell holding anything other than one blue plus one red edge.
    MultiCellViolation {
        row: usize,
        col: usize,
    },
    IsolatedVertex {
        row: Option<usize>,
        col: Option<usize>,
    },
}

/// Lists every invariant violation; an empty list means the graph is well formed.
pub fn validate(g: &ColoredBipartiteGraph) -> Vec<Finding> {
    let n = g.n();
    let mut out = Vec::new();
    let mut row_deg = vec![0usize; n];
    let mut col_deg = vec![0usize; n];
    for e in g.edges() {
        if e.row >= n || e.col >= n {
            out.push(Finding::IndexOutOfRange { row: e.row, col: e.col });
        } else {
            row_deg[e.row] += 1;
            col_deg[e.col] += 1;
        }
    }
    // Edges are sorted, so parallel edges are adjacent.
    let edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let mut j = i + 1;
        while j < edges.len() && edges[j].row == edges[i].row && edges[j].col == edges[i].col {
            j += 1;
        }
        let run = &edges[i..j];
        if run.len() > 1 {
            let (row, col) = (run[0].row, run[0].col);
            let distinct_colors = run.len() == 2 && run[0].color != run[1].color;
            if !g.is_multi() {
                out.push(Finding::DuplicateEdge { row, col });
            } else if !distinct_colors {
                out.push(Finding::MultiCellViolation { row, col });
            }
        }
        i = j;
    }
    for (r, &d) in row_deg.iter().enumerate() {
        if d == 0 {
            out.push(Finding::IsolatedVertex { row: Some(r), col: None });
        }
    }
    for (c, &d) in col_deg.iter().enumerate() {
        if d == 0 {
            out.push(Finding::IsolatedVertex { row: None, col: Some(c) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn clean_graph() {
        let g = ColoredBipartiteGraph::simple(
            2,
            vec![Edge::blue(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
        )
        .unwrap();
        assert!(validate(&g).is_empty());
    }

    #[test]
    fn isolated_row() {
        let g = ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(0, 1)]).unwrap();
        assert_eq!(validate(&g), vec![Finding::IsolatedVertex { row: Some(1), col: None }]);
    }

    #[test]
    fn duplicate_in_simple_graph() {
        let g = ColoredBipartiteGraph::from_parts_unchecked(1, vec![Edge::blue(0, 0), Edge::blue(0, 0)], false);
        assert_eq!(validate(&g), vec![Finding::DuplicateEdge { row: 0, col: 0 }]);
        let g = ColoredBipartiteGraph::from_parts_unchecked(1, vec![Edge::red(0, 0), Edge::red(0, 0)], true);
        assert_eq!(validate(&g), vec![Finding::MultiCellViolation { row: 0, col: 0 }]);
    }

    #[test]
    fn out_of_range() {
        let g = ColoredBipartiteGraph::from_parts_unchecked(1, vec![Edge::blue(0, 0), Edge::blue(0, 3)], false);
        assert_eq!(validate(&g), vec![Finding::IndexOutOfRange { row: 0, col: 3 }]);
    }
}
