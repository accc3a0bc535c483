//! Red/blue edge-colored bipartite graphs, the EBG text format, validation,
//! and generators for the named graph families.

mod ebg;
mod families;
mod validate;

pub use ebg::{parse_ebg, parse_ebg_multi, serialize_ebg};
pub use families::{gen_family, Coloring, Family, FamilySpec};
pub use validate::{validate, Finding};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    Blue = 0,
    Red = 1,
}

impl EdgeColor {
    pub fn from_bit(b: u8) -> Option<Self> {
        match b {
            0 => Some(Self::Blue),
            1 => Some(Self::Red),
            _ => None,
        }
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    pub fn is_red(self) -> bool {
        self == Self::Red
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub row: usize,
    pub col: usize,
    pub color: EdgeColor,
}

impl Edge {
    pub fn new(row: usize, col: usize, color: EdgeColor) -> Self {
        Self { row, col, color }
    }

    pub fn blue(row: usize, col: usize) -> Self {
        Self::new(row, col, EdgeColor::Blue)
    }

    pub fn red(row: usize, col: usize) -> Self {
        Self::new(row, col, EdgeColor::Red)
    }
}

/// Target red-edge count. Values outside `[0, n]` are legal and decide to NO.
pub type TargetSpec = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("edge ({row}, {col}) out of range for n = {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("duplicate edge at cell ({row}, {col})")]
    DuplicateEdge { row: usize, col: usize },
    #[error("unsupported format version {0}")]
    BadVersion(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

/// Bipartite graph with rows `0..n` and columns `0..n`.
///
/// Edges are kept sorted by `(row, col, color)`; an edge id is its index in
/// that order. When `multi` is set, a cell may hold one blue and one red edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredBipartiteGraph {
    n: usize,
    edges: Vec<Edge>,
    multi: bool,
    row_start: Vec<usize>,
}

impl ColoredBipartiteGraph {
    /// Builds a validated graph: indices in range, cells unique unless `multi`,
    /// and at most a blue/red pair per cell when `multi`.
    pub fn new(n: usize, edges: Vec<Edge>, multi: bool) -> Result<Self, GraphError> {
        for e in &edges {
            if e.row >= n || e.col >= n {
                return Err(GraphError::IndexOutOfRange { row: e.row, col: e.col, n });
            }
        }
        let g = Self::from_parts_unchecked(n, edges, multi);
        for w in g.edges.windows(2) {
            if w[0].row == w[1].row && w[0].col == w[1].col && (!multi || w[0].color == w[1].color) {
                return Err(GraphError::DuplicateEdge { row: w[0].row, col: w[0].col });
            }
        }
        Ok(g)
    }

    pub fn simple(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        Self::new(n, edges, false)
    }

    /// Builds a graph without checking invariants; used to feed [`validate`].
    /// Out-of-range edges are kept in the edge list but excluded from adjacency.
    pub fn from_parts_unchecked(n: usize, mut edges: Vec<Edge>, multi: bool) -> Self {
        edges.sort();
        let mut row_start = vec![0; n + 1];
        for e in &edges {
            if e.row < n {
                row_start[e.row + 1] += 1;
            }
        }
        for i in 0..n {
            row_start[i + 1] += row_start[i];
        }
        Self { n, edges, multi, row_start }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn red_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.color.is_red()).count()
    }

    /// Ids of the edges at row `i`, in column order.
    pub fn row_edge_ids(&self, i: usize) -> std::ops::Range<usize> {
        self.row_start[i]..self.row_start[i + 1]
    }

    pub fn row_edges(&self, i: usize) -> &[Edge] {
        &self.edges[self.row_edge_ids(i)]
    }

    /// Distinct neighbouring columns of row `i`.
    pub fn row_neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.row_edges(i).iter().map(|e| e.col).collect();
        v.dedup();
        v
    }

    /// Distinct neighbouring rows of every column.
    pub fn col_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if adj[e.col].last() != Some(&e.row) {
                adj[e.col].push(e.row);
            }
        }
        adj
    }

    /// Simple adjacency lists (rows → distinct columns).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row_neighbors(i)).collect()
    }

    pub fn has_cell(&self, row: usize, col: usize) -> bool {
        self.find_edge(row, col, None).is_some()
    }

    /// Finds an edge id at `(row, col)`, optionally with a given color.
    pub fn find_edge(&self, row: usize, col: usize, color: Option<EdgeColor>) -> Option<usize> {
        if row >= self.n {
            return None;
        }
        self.row_edge_ids(row).find(|&id| self.edges[id].col == col && color.is_none_or(|c| self.edges[id].color == c))
    }

    /// `(blue, red)` parallel-edge counts at a cell.
    pub fn cell_counts(&self, row: usize, col: usize) -> (usize, usize) {
        let mut b = 0;
        let mut r = 0;
        for e in self.row_edges(row).iter().filter(|e| e.col == col) {
            match e.color {
                EdgeColor::Blue => b += 1,
                EdgeColor::Red => r += 1,
            }
        }
        (b, r)
    }

    /// Same graph with a subset of edges, given by id.
    pub fn with_edge_ids(&self, keep: impl IntoIterator<Item = usize>) -> Self {
        let edges = keep.into_iter().map(|id| self.edges[id]).collect();
        Self::from_parts_unchecked(self.n, edges, self.multi)
    }

    pub fn without_edge(&self, id: usize) -> Self {
        self.with_edge_ids((0..self.edges.len()).filter(|&e| e != id))
    }

    pub fn with_colors(&self, mut recolor: impl FnMut(&Edge) -> EdgeColor) -> Self {
        let edges = self.edges.iter().map(|e| Edge { color: recolor(e), ..*e }).collect();
        Self::from_parts_unchecked(self.n, edges, self.multi)
    }

    /// Subgraph induced on equally sized ordered row and column sets,
    /// relabelled to `0..k`. Also returns the new-to-old edge id map.
    pub fn induced(&self, rows: &[usize], cols: &[usize]) -> (Self, Vec<usize>) {
        assert_eq!(rows.len(), cols.len(), "induced subgraph must be square");
        let mut row_pos = vec![usize::MAX; self.n];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let mut col_pos = vec![usize::MAX; self.n];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let mut tagged: Vec<(Edge, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| row_pos[e.row] != usize::MAX && col_pos[e.col] != usize::MAX)
            .map(|(id, e)| (Edge::new(row_pos[e.row], col_pos[e.col], e.color), id))
            .collect();
        tagged.sort();
        let map = tagged.iter().map(|&(_, id)| id).collect();
        let g = Self::from_parts_unchecked(rows.len(), tagged.into_iter().map(|(e, _)| e).collect(), self.multi);
        (g, map)
    }

    /// Deletes row `i` and column `j`, relabelling the rest in order.
    pub fn delete_row_col(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.n).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&c| c != j).collect();
        self.induced(&rows, &cols).0
    }

    /// Block-diagonal placement: `self` on `0..n1`, `other` on `n1..n1+n2`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(e.row + off, e.col + off, e.color)));
        Self::from_parts_unchecked(self.n + other.n, edges, self.multi || other.multi)
    }

    /// Same edges with parallel pairs collapsed to one blue edge per cell.
    pub fn underlying_simple(&self) -> Self {
        let mut cells: Vec<Edge> = self.edges.iter().map(|e| Edge::blue(e.row, e.col)).collect();
        cells.dedup();
        Self::from_parts_unchecked(self.n, cells, false)
    }

    /// Connected components as `(rows, cols)` pairs, ordered by smallest row
    /// (then smallest column for row-less pieces). Isolated vertices form
    /// their own components.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        // Vertices 0..n are rows, n..2n columns.
        let mut parent: Vec<usize> = (0..2 * self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in &self.edges {
            let a = find(&mut parent, e.row);
            let b = find(&mut parent, self.n + e.col);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
        for v in 0..2 * self.n {
            let r = find(&mut parent, v);
            let entry = groups.entry(r).or_default();
            if v < self.n {
                entry.0.push(v);
            } else {
                entry.1.push(v - self.n);
            }
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }
}

impl fmt::Debug for ColoredBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}{}, [", self.n, if self.multi { ", multi" } else { "" })?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}{}", e.row, if e.color.is_red() { 'r' } else { '-' }, e.col)?;
        }
        write!(f, "])")
    }
}
